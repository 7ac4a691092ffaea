// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// fails.  Tolerances and instance sizes are pinned here on purpose.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ramsey/bounds.hpp"
#include "ramsey/coloring.hpp"
#include "ramsey/finders.hpp"
#include "ramsey/pigeonhole.hpp"
#include "ramsey/privacy.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/types.hpp"

using namespace ramsey;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = {}) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

SubsetColorFn random_subsets(int k, std::uint64_t seed) {
  return [k, seed](const std::vector<Path>& s) {
    return static_cast<int>(mix_hash("s:" + subset_key(s), seed) % k);
  };
}

CrossColorFn random_cross(int k, std::uint64_t seed) {
  return [k, seed](const Path& u, const Path& v) {
    return static_cast<int>(mix_hash("x:" + u + "|" + v, seed) % k);
  };
}

// Exhaustive oracle depth with a cap; lowers the cap when the enumeration
// budget is hit (the dominance check only needs oracle >= achieved, so any
// feasible cap >= achieved settles it).
int oracle_depth(const Embedding& host, int arity,
                 const std::function<std::optional<int>(
                     const std::vector<Path>&)>& fn,
                 bool type_mono, int cap) {
  for (int c = cap; c >= 0; --c) {
    try {
      OracleOptions opt;
      opt.max_depth = c;
      return oracle_best_fn(host, arity, fn, type_mono, opt).subtree.depth;
    } catch (const std::runtime_error&) {
      continue;  // enumeration limit hit at this cap
    }
  }
  return 0;
}

// ---- criteria --------------------------------------------------------------

void criterion_1() {
  const long expected[] = {1, 3, 13, 67};
  bool ok = true;
  std::string detail;
  for (int m = 1; m <= 4 && ok; ++m) {
    if (tau(m) != expected[m - 1]) {
      ok = false;
      detail = "tau(" + std::to_string(m) + ") formula mismatch";
      break;
    }
    if (m < 3) continue;  // anchors; brute-force the larger two
    std::set<std::string> seen;
    for_each_subset(whole_tree(m + 1), m, [&](const std::vector<Path>& s) {
      seen.insert(subset_type(s).canonical);
      return true;
    });
    if (static_cast<long>(seen.size()) != expected[m - 1]) {
      ok = false;
      detail = "brute-force count " + std::to_string(seen.size()) +
               " for m=" + std::to_string(m);
    }
  }
  report(1, "type counts tau(1..4) = 1,3,13,67 with brute-force cross-check",
         ok, detail);
}

void criterion_2() {
  bool ok = true;
  for (int m = 2; m <= 10; ++m) {
    const double t = tau(m).convert_to<double>();
    if (t > tau_upper_bound(m) * (1 + 1e-9)) ok = false;
  }
  report(2, "tau(m) <= 2^(3m-2)/sqrt(pi(m-1)) for m = 2..10", ok);
}

void criterion_3() {
  bool ok = true;
  for (int m = 1; m <= 6; ++m) {
    long chains = 0;
    for (const auto& t : enumerate_types(m)) chains += is_chain_shape(t);
    if (chains != (1L << (m - 1))) ok = false;
  }
  report(3, "chain-type count = 2^(m-1) for m = 1..6 by filtered enumeration",
         ok);
}

void criterion_4() {
  std::mt19937_64 rng(2024);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int n = k + static_cast<int>(rng() % (13 - k));
    BudgetVector budgets(k, 1);
    for (int extra = n - k; extra > 0; --extra) ++budgets[rng() % k];
    const std::uint64_t seed = rng();
    auto chi = [k, seed](const Path& v) {
      return static_cast<int>(mix_hash("v:" + v, seed) % k);
    };
    PigeonholeResult res = php_find(whole_tree(n), chi, budgets);
    std::string reason;
    if (!validate_embedding(res.subtree, n, &reason) ||
        !is_vertex_monochromatic(res.subtree, chi, res.color) ||
        res.subtree.depth != budgets[res.color]) {
      ok = false;
      detail = "trial " + std::to_string(trial) + " " + reason;
    }
  }
  report(4, "1000 seeded pigeonhole instances, exact budgeted depth", ok,
         detail);
}

void criterion_5() {
  auto binom = [](int n, int r) {
    BigInt v = 1;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
  };
  bool ok = true;
  for (int n = 0; n <= 5; ++n)
    for (int d = 0; d <= std::min(n, 2); ++d) {
      const BigInt count = count_subtrees(whole_tree(n), d, true);
      // The C(n, d+1) * 2^(n*2^d) bound silently assumes n >= d+2 (its
      // level count drops the root's level-0 option); the corrected level
      // count C(n+1, d+1) covers the degenerate cases too.
      if (n >= d + 2 &&
          !tv_leq(TowerValue::from_exact(count), subtree_count_bound(n, d)))
        ok = false;
      const BigInt corrected =
          binom(n + 1, d + 1) * twr_exact(1, BigInt(n) * twr_exact(1, d));
      if (count > corrected) ok = false;
    }
  report(5, "level-aligned subtree counts within the analytic bound",
         ok);
}

void criterion_6() {
  std::mt19937_64 rng(777);
  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& which, int trial) {
    ok = false;
    detail = which + " trial " + std::to_string(trial);
  };

  for (int trial = 0; trial < 200 && ok; ++trial) {
    //  comparable pairs
    {
      const int n = 4 + static_cast<int>(rng() % 3);
      const int k = 2 + static_cast<int>(rng() % 2);
      const int side = static_cast<int>(rng() % 2);
      auto chi = random_subsets(k, rng());
      FinderResult res = find_comparable_pairs(whole_tree(n), chi, k, side);
      auto family = [&](const std::vector<Path>& s) -> std::optional<int> {
        const Relation r = relation(s[1], s[0]);
        const bool in = side == 0 ? r == Relation::LeftDescendant
                                  : r == Relation::RightDescendant;
        if (!in) return std::nullopt;
        return chi(s);
      };
      if (!verify_comparable(res.subtree, chi, side, *res.color) ||
          res.subtree.depth > oracle_depth(whole_tree(n), 2, family, false,
                                           res.subtree.depth + 1))
        fail("comparable", trial);
    }
    //  incomparable pairs
    if (ok) {
      const int n = 4 + static_cast<int>(rng() % 2);
      auto chi = random_subsets(2, rng());
      FinderResult res = find_incomparable_pairs(whole_tree(n), chi, 2);
      auto family = [&](const std::vector<Path>& s) -> std::optional<int> {
        if (relation(s[0], s[1]) != Relation::Incomparable)
          return std::nullopt;
        return chi(s);
      };
      if (!verify_incomparable(res.subtree, chi, *res.color) ||
          res.subtree.depth > oracle_depth(whole_tree(n), 2, family, false,
                                           res.subtree.depth + 1))
        fail("incomparable", trial);
    }
    //  chains
    if (ok) {
      const int m = 2 + static_cast<int>(rng() % 2);
      auto chi = random_subsets(2, rng());
      FinderResult res = find_chains(whole_tree(5), chi, m, 2);
      auto family = [&](const std::vector<Path>& s) -> std::optional<int> {
        if (!is_chain(s)) return std::nullopt;
        return chi(s);
      };
      if (!verify_type_colors(res.subtree, chi, m, true, res.type_colors) ||
          res.subtree.depth > oracle_depth(whole_tree(5), m, family, true,
                                           res.subtree.depth + 1))
        fail("chains", trial);
    }
    //  m-subsets
    if (ok) {
      auto chi = random_subsets(2, rng());
      FinderResult res = find_msubsets(whole_tree(4), chi, 2, 2);
      auto family = [&](const std::vector<Path>& s) -> std::optional<int> {
        return chi(s);
      };
      if (!verify_type_colors(res.subtree, chi, 2, false, res.type_colors) ||
          res.subtree.depth > oracle_depth(whole_tree(4), 2, family, true,
                                           res.subtree.depth + 1))
        fail("msubsets", trial);
    }
    //  bipartite
    if (ok) {
      const int k = 2 + static_cast<int>(rng() % 2);
      auto chi = random_cross(k, rng());
      BipartiteResult res =
          find_bipartite(whole_tree(3), whole_tree(3), chi, k);
      BipartiteResult best =
          oracle_bipartite_best(whole_tree(3), whole_tree(3), chi);
      if (!verify_cross(res.left, res.right, chi, res.color) ||
          res.left.depth > best.left.depth)
        fail("bipartite", trial);
    }
  }
  report(6, "five finders x 200 seeded instances: verified and oracle-bounded",
         ok, detail);
}

void criterion_7() {
  const int guarantee = comparable_pairs_guarantee(16, 2);
  bool ok = guarantee == 1;
  std::mt19937_64 rng(31);
  const Embedding host = whole_tree(16);
  for (int trial = 0; trial < 200 && ok; ++trial) {
    auto chi = random_subsets(2, rng());
    FinderResult res = find_comparable_pairs(host, chi, 2, 0);
    if (res.subtree.depth < guarantee ||
        !verify_comparable(res.subtree, chi, 0, *res.color))
      ok = false;
  }
  report(7, "comparable-pairs depth >= 1 on 200 seeded n=16 k=2 colorings",
         ok);
}

void criterion_8() {
  bool ok = true;
  // Pair coloring: every depth-1 subtree of the depth-4 host sees exactly
  // 3 of the 4 colors (both comparable sides plus one incomparable color).
  {
    Coloring c = depth_pair_coloring(4);
    for_each_subtree(whole_tree(4), 1, false, [&](const Embedding& e) {
      std::set<int> colors;
      for_each_subset(e, 2, [&](const std::vector<Path>& s) {
        if (auto col = c.try_color(s)) colors.insert(*col);
        return true;
      });
      if (colors.size() != 3) ok = false;
      return ok;
    });
  }
  // Skew triplets: every depth-2 subtree of the depth-3 host contains both
  // marked triplet patterns.
  {
    Coloring c = skew_triplet_coloring(3);
    for_each_subtree(whole_tree(3), 2, false, [&](const Embedding& e) {
      std::set<int> colors;
      for_each_subset(e, 3, [&](const std::vector<Path>& s) {
        if (auto col = c.try_color(s)) colors.insert(*col);
        return true;
      });
      if (colors != std::set<int>{0, 1}) ok = false;
      return ok;
    });
  }
  // Level-aligned variant: every level-aligned depth-2 subtree of the
  // depth-5 host sees all four pair colors.
  {
    Coloring c = depth_pair_coloring(5);
    for_each_subtree(whole_tree(5), 2, true, [&](const Embedding& e) {
      std::set<int> colors;
      for_each_subset(e, 2, [&](const std::vector<Path>& s) {
        if (auto col = c.try_color(s)) colors.insert(*col);
        return true;
      });
      if (colors.size() != 4) ok = false;
      return ok;
    });
  }
  report(8, "counterexample colorings defeat small subtrees exhaustively",
         ok);
}

void criterion_9() {
  bool ok = true;
  // twr / log_iter inversion wherever twr stays exact.
  for (int t = 0; t <= 5 && ok; ++t)
    for (int x = 1; x <= 6 && ok; ++x) {
      BigInt v;
      try {
        v = twr_exact(t, x);
      } catch (const std::overflow_error&) {
        continue;
      }
      if (log_iter(t, v) != x) ok = false;
    }
  // Pair-bound orderings and the recursive-vs-closed chain envelope.
  for (int d = 1; d <= 4 && ok; ++d)
    for (int k = 2; k <= 4 && ok; ++k) {
      if (!tv_leq(bound_left_right(d, k), bound_incomparable(d, k)) ||
          !tv_leq(bound_incomparable(d, k), bound_all_pairs(d, k)))
        ok = false;
      for (int m = 2; m <= 4 && ok; ++m)
        if (!tv_leq(bound_chains_recursive(m, d, k),
                    bound_chains_closed(m, d, k)))
          ok = false;
    }
  // Envelope coefficient stays in [4, 5].
  for (int m = 2; m <= 12 && ok; ++m) {
    const double c = c_coefficient(m, 2, 2);
    if (c < 4.0 || c > 5.0) ok = false;
  }
  report(9, "bounds engine: inversion identities, orderings, c_m <= 5", ok);
}

void criterion_10() {
  Learner a = leftmost_branch_learner();
  Coloring coloring = build_chain_coloring(a, 5, 1);
  OracleOptions opt;
  opt.max_depth = 2;  // enumeration budget; depth 2 is all that is claimed
  FinderResult best = oracle_best(whole_tree(5), coloring, true, opt);
  bool ok = best.subtree.depth >= 2;
  if (ok) {
    auto check = is_comparison_based(a, best.subtree, 1, 1.0 / 100);
    ok = check.comparison_based;
  }
  report(10,
         "prediction-vector chain coloring -> type-monochromatic subtree -> "
         "comparison-based with gamma = 1/100",
         ok);
}

// Criteria 11 and 12 share the Monte-Carlo run.
void criteria_11_12() {
  const int n = 4096;
  bool ok11 = window_length(n) == 144;
  std::vector<int> depths;
  for (int i = 0; i < 8; ++i) depths.push_back(500 + 150 * i);  // gaps 150
  IppInstance inst(n, depths);
  Learner a = leftmost_branch_learner();
  int interior = 0;
  long scan_reads = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    ReduceResult r = reduce_from_ipp(a, inst, 9000 + t);
    interior += r.interior;
    scan_reads += r.scan_depth_reads;
  }
  const double rate = static_cast<double>(interior) / trials;
  ok11 = ok11 && rate >= 0.75;
  std::ostringstream d;
  d << "interior rate " << rate;
  report(11, "interior-point reduction utility at n=4096, m=8, 200 seeds",
         ok11, d.str());
  report(12, "scanning stage performs zero reads of the instance depths",
         scan_reads == 0,
         std::to_string(scan_reads) + " reads across all trials");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criteria_11_12();
  const auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - t0);
  std::cout << (g_failures == 0 ? "ACCEPTED" : "REJECTED") << " ("
            << g_failures << " failing criteria, " << dt.count() << " ms)"
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
