#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ramsey/tree.hpp"

using namespace ramsey;

TEST_CASE("relation basics") {
  CHECK(relation("0", "") == Relation::LeftDescendant);
  CHECK(relation("1", "") == Relation::RightDescendant);
  CHECK(relation("", "0") == Relation::LeftAncestor);
  CHECK(relation("", "1") == Relation::RightAncestor);
  CHECK(relation("01", "0") == Relation::RightDescendant);
  CHECK(relation("01", "10") == Relation::Incomparable);
  CHECK(relation("01", "01") == Relation::Equal);
  CHECK(relation("0010", "00") == Relation::RightDescendant);
}

TEST_CASE("relation agrees with lca on random pairs") {
  std::mt19937_64 rng(12345);
  auto rand_path = [&](int maxd) {
    int d = static_cast<int>(rng() % (maxd + 1));
    Path p;
    for (int i = 0; i < d; ++i) p += (rng() & 1) ? '1' : '0';
    return p;
  };
  for (int trial = 0; trial < 10000; ++trial) {
    Path a = rand_path(10), b = rand_path(10);
    Path l = lca(a, b);
    CHECK(is_ancestor(l, a));
    CHECK(is_ancestor(l, b));
    Relation r = relation(a, b);
    if (a == b) {
      CHECK(r == Relation::Equal);
    } else if (l == b) {
      CHECK((r == Relation::LeftDescendant || r == Relation::RightDescendant));
      CHECK((r == Relation::LeftDescendant) == (a[b.size()] == '0'));
    } else if (l == a) {
      CHECK((r == Relation::LeftAncestor || r == Relation::RightAncestor));
    } else {
      CHECK(r == Relation::Incomparable);
    }
  }
}

TEST_CASE("whole_tree and validate") {
  Embedding e = whole_tree(3);
  CHECK(e.vertices.size() == 15);
  CHECK(e.root() == "");
  CHECK(e.vertices[1] == "0");
  CHECK(e.vertices[2] == "1");
  CHECK(e.vertices[14] == "111");
  CHECK(validate_embedding(e, 3));
  CHECK(validate_embedding(e, 5));
  CHECK_FALSE(validate_embedding(e, 2));

  // Corrupt child relation.
  Embedding bad = e;
  std::swap(bad.vertices[1], bad.vertices[2]);
  std::string why;
  CHECK_FALSE(validate_embedding(bad, 3, &why));
  CHECK(why == "left child is not a strict left-descendant");

  // Non-aligned but otherwise valid embedding.
  Embedding skew;
  skew.depth = 1;
  skew.level_aligned = false;
  skew.vertices = {"", "00", "1"};
  CHECK(validate_embedding(skew, 2));
  skew.level_aligned = true;
  CHECK_FALSE(validate_embedding(skew, 2));
}

TEST_CASE("subtree_at and truncate") {
  Embedding e = whole_tree(3);
  Embedding l = subtree_at(e, 1);
  CHECK(l.depth == 2);
  CHECK(l.root() == "0");
  CHECK(l.vertices.size() == 7);
  CHECK(validate_embedding(l, 3));
  Embedding t = truncate(e, 1);
  CHECK(t.vertices == std::vector<Path>({"", "0", "1"}));
}

// Reference counts for depth-1 subtrees of the depth-2 host, frozen from an
// independent hand count: level-aligned 7, unconstrained 11.
TEST_CASE("subtree enumeration counts, depth-2 host") {
  Embedding host = whole_tree(2);
  auto aligned = enumerate_subtrees(host, 1, true);
  auto any = enumerate_subtrees(host, 1, false);
  CHECK(aligned.size() == 7);
  CHECK(any.size() == 11);
  CHECK(count_subtrees(host, 1, true) == 7);
  CHECK(count_subtrees(host, 1, false) == 11);
  for (const auto& e : aligned) CHECK(validate_embedding(e, 2));
  for (const auto& e : any) CHECK(validate_embedding(e, 2));
  // Lexicographic order of heap-order sequences (element order = canonical
  // vertex order), and no duplicates.
  auto seq_less = [](const Embedding& a, const Embedding& b) {
    return std::lexicographical_compare(
        a.vertices.begin(), a.vertices.end(), b.vertices.begin(),
        b.vertices.end(), path_less);
  };
  for (std::size_t i = 0; i + 1 < any.size(); ++i)
    CHECK(seq_less(any[i], any[i + 1]));
  // First in lex order roots at the host root with children "0","1".
  CHECK(any[0].vertices == std::vector<Path>({"", "0", "1"}));
}

TEST_CASE("enumeration matches brute force on depth-3 host") {
  Embedding host = whole_tree(3);
  // Independent brute force: choose 7 vertices, test heap relations.
  auto brute = [&](bool aligned) {
    std::set<std::string> found;
    for_each_subtree(host, 2, aligned, [&](const Embedding& e) {
      std::string k;
      for (const auto& p : e.vertices) k += p + "|";
      CHECK(found.insert(k).second);  // no duplicates
      Embedding copy = e;
      copy.level_aligned = aligned;
      CHECK(validate_embedding(copy, 3));
      return true;
    });
    return found.size();
  };
  std::uint64_t na = count_subtrees(host, 2, true);
  std::uint64_t nu = count_subtrees(host, 2, false);
  CHECK(brute(true) == na);
  CHECK(brute(false) == nu);
  CHECK(na <= nu);
  CHECK(count_subtrees(host, 3, true) == 1);  // only the identity embedding
}

TEST_CASE("count limit saturates") {
  Embedding host = whole_tree(3);
  std::uint64_t n = count_subtrees(host, 1, false);
  CHECK(n > 5);
  CHECK(count_subtrees(host, 1, false, 5) == 6);
  CHECK_THROWS(enumerate_subtrees(host, 1, false, 5));
}

TEST_CASE("subset enumeration") {
  Embedding host = whole_tree(2);
  int count = 0;
  for_each_subset(host, 2, [&](const std::vector<Path>& s) {
    CHECK(s.size() == 2);
    CHECK(path_less(s[0], s[1]));
    ++count;
    return true;
  });
  CHECK(count == 21);  // C(7,2)
  CHECK(subset_key({"1", "", "0"}) == "|0|1");
}
