#include "ramsey/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace ramsey {

std::vector<Path> lca_closure(const std::vector<Path>& subset) {
  std::set<Path> cl(subset.begin(), subset.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Path> cur(cl.begin(), cl.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (cl.insert(lca(cur[i], cur[j])).second) grew = true;
  }
  return sorted_paths({cl.begin(), cl.end()});
}

namespace {

std::string serialize_shape(const std::vector<Path>& closure,
                            const std::set<Path>& members, const Path& v) {
  // Children of v in the induced tree: the shallowest closure vertices that
  // are strict left/right-descendants of v.  Closedness under LCA makes
  // each side's candidate unique (two incomparable descendants on one side
  // would put their LCA, also a strict descendant of v on that side, in the
  // closure and strictly above both).
  std::string left = ".", right = ".";
  const Path* bestl = nullptr;
  const Path* bestr = nullptr;
  for (const Path& w : closure) {
    Relation r = relation(w, v);
    if (r == Relation::LeftDescendant) {
      if (!bestl || w.size() < bestl->size()) bestl = &w;
    } else if (r == Relation::RightDescendant) {
      if (!bestr || w.size() < bestr->size()) bestr = &w;
    }
  }
  if (bestl) left = serialize_shape(closure, members, *bestl);
  if (bestr) right = serialize_shape(closure, members, *bestr);
  char mark = members.count(v) ? 'A' : '*';
  return std::string(1, mark) + "(" + left + "," + right + ")";
}

struct ShapeNode {
  bool marked = false;       // closure-only vertex
  int left = -1, right = -1;
};

// Parse the canonical serialization back into nodes; returns root index.
int parse_shape(const std::string& s, std::size_t& pos,
                std::vector<ShapeNode>& nodes) {
  ShapeNode n;
  n.marked = (s[pos] == '*');
  pos += 2;  // mark and '('
  int idx = static_cast<int>(nodes.size());
  nodes.push_back(n);
  if (s[pos] == '.') {
    ++pos;
  } else {
    nodes[idx].left = parse_shape(s, pos, nodes);
  }
  ++pos;  // ','
  if (s[pos] == '.') {
    ++pos;
  } else {
    nodes[idx].right = parse_shape(s, pos, nodes);
  }
  ++pos;  // ')'
  return idx;
}

}  // namespace

SubsetType subset_type(const std::vector<Path>& subset) {
  if (subset.empty()) throw std::invalid_argument("subset_type: empty subset");
  std::vector<Path> closure = lca_closure(subset);
  std::set<Path> members(subset.begin(), subset.end());
  SubsetType t;
  t.m = static_cast<int>(members.size());
  t.canonical = serialize_shape(closure, members, closure.front());
  return t;
}

bool is_chain(const std::vector<Path>& subset) {
  auto s = sorted_paths(subset);
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!is_ancestor(s[i], s[i + 1])) return false;
  return true;
}

ChainType chain_type(const std::vector<Path>& chain) {
  auto s = sorted_paths(chain);
  if (!is_chain(s)) throw std::invalid_argument("chain_type: not a chain");
  ChainType t;
  t.m = static_cast<int>(s.size());
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    t.bits.push_back(s[i + 1][s[i].size()] == '1' ? 1 : 0);
  return t;
}

SubsetType chain_subset_type(const ChainType& t) {
  std::string ser = "A(.,.)";
  for (auto it = t.bits.rbegin(); it != t.bits.rend(); ++it)
    ser = (*it == 0) ? "A(" + ser + ",.)" : "A(.," + ser + ")";
  return SubsetType{t.m, ser};
}

namespace {

std::string reserialize(const std::vector<ShapeNode>& nodes, int i) {
  std::string l = nodes[i].left >= 0 ? reserialize(nodes, nodes[i].left) : ".";
  std::string r =
      nodes[i].right >= 0 ? reserialize(nodes, nodes[i].right) : ".";
  return std::string(1, nodes[i].marked ? '*' : 'A') + "(" + l + "," + r + ")";
}

int count_unmarked(const std::vector<ShapeNode>& nodes, int i) {
  int c = nodes[i].marked ? 0 : 1;
  if (nodes[i].left >= 0) c += count_unmarked(nodes, nodes[i].left);
  if (nodes[i].right >= 0) c += count_unmarked(nodes, nodes[i].right);
  return c;
}

}  // namespace

TypeSplit split_type(const SubsetType& t) {
  std::vector<ShapeNode> nodes;
  std::size_t pos = 0;
  int root = parse_shape(t.canonical, pos, nodes);
  TypeSplit out;
  out.root_marked = nodes[root].marked;
  if (nodes[root].left >= 0)
    out.left = SubsetType{count_unmarked(nodes, nodes[root].left),
                          reserialize(nodes, nodes[root].left)};
  if (nodes[root].right >= 0)
    out.right = SubsetType{count_unmarked(nodes, nodes[root].right),
                           reserialize(nodes, nodes[root].right)};
  return out;
}

bool is_chain_shape(const SubsetType& t) {
  std::vector<ShapeNode> nodes;
  std::size_t pos = 0;
  parse_shape(t.canonical, pos, nodes);
  for (const ShapeNode& n : nodes) {
    if (n.marked) return false;
    if (n.left >= 0 && n.right >= 0) return false;
  }
  return true;
}

namespace {

// All canonical shape strings with exactly m unmarked vertices.  Marked
// vertices are branching points, so a marked node always has two children
// and a shape with m unmarked vertices has at most m-1 marked ones.
const std::vector<std::string>& shapes(int m) {
  static std::map<int, std::vector<std::string>> memo;
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  std::set<std::string> out;
  if (m >= 1) {
    // Unmarked root: children split the remaining m-1 (either may be empty).
    for (int l = 0; l <= m - 1; ++l) {
      int r = m - 1 - l;
      std::vector<std::string> ls =
          l ? shapes(l) : std::vector<std::string>{"."};
      std::vector<std::string> rs =
          r ? shapes(r) : std::vector<std::string>{"."};
      for (const auto& a : ls)
        for (const auto& b : rs) out.insert("A(" + a + "," + b + ")");
    }
    // Marked root: both subtrees nonempty, unmarked counts l + r = m.
    for (int l = 1; l <= m - 1; ++l) {
      for (const auto& a : shapes(l))
        for (const auto& b : shapes(m - l)) out.insert("*(" + a + "," + b + ")");
    }
  }
  return memo[m] = {out.begin(), out.end()};
}

}  // namespace

const std::vector<SubsetType>& enumerate_types(int m) {
  static std::map<int, std::vector<SubsetType>> memo;
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  std::vector<SubsetType> out;
  for (const std::string& s : shapes(m)) out.push_back({m, s});
  return memo[m] = std::move(out);
}

int type_index(const SubsetType& t) {
  const auto& all = enumerate_types(t.m);
  auto it = std::lower_bound(all.begin(), all.end(), t);
  if (it == all.end() || !(*it == t))
    throw std::invalid_argument("type_index: unknown type " + t.canonical);
  return static_cast<int>(it - all.begin());
}

BigInt tau_closed_form(int m) {
  if (m < 1) throw std::invalid_argument("tau: m must be >= 1");
  BigInt total = 0;
  for (int k = 0; k <= m - 1; ++k) {
    BigInt binom = 1;  // C(m+k-1, k)
    for (int i = 1; i <= k; ++i) {
      binom *= (m + k - 1 - (k - i));
      binom /= i;
    }
    total += BigInt(m - k) * binom * (BigInt(1) << k);
  }
  if (total % m != 0)
    throw std::logic_error("tau: closed form not divisible by m");
  return total / m;
}

BigInt tau(int m) { return tau_closed_form(m); }

double tau_upper_bound(int m) {
  if (m < 2) throw std::invalid_argument("tau_upper_bound: m must be >= 2");
  const double pi = 3.14159265358979323846;
  return std::pow(2.0, 3 * m - 2) / std::sqrt(pi * (m - 1));
}

BigInt tau_infinity_lower(int m) {
  BigInt fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  return fact + (BigInt(1) << (m - 1));
}

}  // namespace ramsey
