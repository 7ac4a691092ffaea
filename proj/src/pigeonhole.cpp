#include "ramsey/pigeonhole.hpp"

#include <algorithm>
#include <stdexcept>

namespace ramsey {

namespace {

Embedding single(const Path& v) { return Embedding{0, false, {v}}; }

// Two-color pigeonhole on the subtree of `host` rooted at heap index i,
// which must have at least a + b levels below it.  chi2 gives colors 0/1;
// returns a monochromatic subtree of depth >= its color's budget.
struct Php2 {
  const Embedding& host;
  const VertexColorFn& chi2;

  PigeonholeResult run(std::size_t i, int remaining, int a, int b) {
    const Path& v = host.vertices[i];
    int c = chi2(v);
    if (c == 0 && a == 0) return {0, single(v)};
    if (c == 1 && b == 0) return {1, single(v)};
    if (remaining < 1)
      throw std::logic_error("php: depth budget exceeds host depth");
    int na = (c == 0) ? a - 1 : a;
    int nb = (c == 1) ? b - 1 : b;
    PigeonholeResult l = run(2 * i + 1, remaining - 1, na, nb);
    if (l.color != c) return l;  // witness for the other color, done
    PigeonholeResult r = run(2 * i + 2, remaining - 1, na, nb);
    if (r.color != c) return r;
    int d = (c == 0) ? na : nb;
    return {c, join_embeddings(v, truncate(l.subtree, d), truncate(r.subtree, d))};
  }
};

}  // namespace

bool is_vertex_monochromatic(const Embedding& e, const VertexColorFn& chi,
                             int color) {
  for (const Path& p : e.vertices)
    if (chi(p) != color) return false;
  return true;
}

PigeonholeResult php_find(const Embedding& host, const VertexColorFn& chi,
                          const BudgetVector& budgets) {
  int k = static_cast<int>(budgets.size());
  if (k < 1) throw std::invalid_argument("php_find: empty budget vector");
  int sum = 0;
  for (int a : budgets) {
    if (a < 0) throw std::invalid_argument("php_find: negative budget");
    sum += a;
  }
  if (sum > host.depth)
    throw std::invalid_argument("php_find: budgets exceed host depth");
  BudgetVector b = budgets;
  // Hand any slack to the (first) largest budget.
  *std::max_element(b.begin(), b.end()) += host.depth - sum;

  // Peel colors from the back: merge the last two budgets, solve with one
  // color fewer, then split the merged witness with the two-color routine.
  std::function<PigeonholeResult(const Embedding&, const VertexColorFn&,
                                 const BudgetVector&)>
      solve = [&](const Embedding& e, const VertexColorFn& col,
                  const BudgetVector& bud) -> PigeonholeResult {
    int kk = static_cast<int>(bud.size());
    if (kk == 1) return {0, e};
    if (kk == 2) {
      Php2 p{e, col};
      return p.run(0, e.depth, bud[0], bud[1]);
    }
    BudgetVector merged(bud.begin(), bud.end() - 1);
    merged.back() += bud.back();
    auto mcol = [&col, kk](const Path& p) {
      return std::min(col(p), kk - 2);
    };
    PigeonholeResult res = solve(e, mcol, merged);
    if (res.color < kk - 2) return res;
    // res.subtree uses only the two merged colors; split it.
    auto bicol = [&col, kk](const Path& p) {
      return col(p) == kk - 1 ? 1 : 0;
    };
    Php2 p{res.subtree, bicol};
    PigeonholeResult split =
        p.run(0, res.subtree.depth, bud[kk - 2], bud[kk - 1]);
    split.color += kk - 2;
    return split;
  };
  PigeonholeResult out = solve(host, chi, b);
  if (k == 1 && !is_vertex_monochromatic(out.subtree, chi, 0))
    throw std::invalid_argument("php_find: k=1 but coloring is not constant");
  return out;
}

PigeonholeResult php_find_uniform(const Embedding& host,
                                  const VertexColorFn& chi, int k) {
  return php_find(host, chi, BudgetVector(k, host.depth / k));
}

PigeonholeResult php_level_aligned_bruteforce(const Embedding& host,
                                              const VertexColorFn& chi,
                                              std::uint64_t limit) {
  std::uint64_t seen = 0;
  for (int d = host.depth; d >= 0; --d) {
    PigeonholeResult out;
    bool found = false;
    for_each_subtree(host, d, true, [&](const Embedding& e) {
      if (limit && ++seen > limit)
        throw std::runtime_error("oracle infeasible: enumeration limit hit");
      int c = chi(e.root());
      if (is_vertex_monochromatic(e, chi, c)) {
        out = {c, e};
        found = true;
        return false;
      }
      return true;
    });
    if (found) return out;
  }
  throw std::logic_error("php_level_aligned_bruteforce: unreachable");
}

}  // namespace ramsey
