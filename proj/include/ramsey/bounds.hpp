#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ramsey/types.hpp"  // BigInt

namespace ramsey {

// Tower function convention: twr(0, x) = x and twr(t, x) = 2^twr(t-1, x).
// log_iter(t, x) applies floor(log2) t times; log_star(x) is the least t
// with log_iter(t, x) <= 1.
BigInt twr_exact(int t, const BigInt& x);  // throws once values pass 2^20 bits
BigInt log_iter(int t, BigInt x);          // x must stay positive throughout
int log_star(const BigInt& x);

// A possibly-astronomical quantity.  Values small enough to write down
// (below 2^256) normalize to Exact; everything else stays symbolic and is
// compared through a floating "level form" (L, x) meaning twr(L, x).
class TowerValue {
 public:
  enum class Kind { Exact, Tower, Power, Quotient };

  static TowerValue from_exact(BigInt v);
  static TowerValue tower(int height, double top);
  static TowerValue power(TowerValue base, double exponent);   // base^exponent
  static TowerValue quotient(TowerValue num, TowerValue den);  // num / den

  Kind kind() const { return kind_; }
  const BigInt& exact() const { return exact_; }
  int height() const { return height_; }
  double top() const { return top_; }

  // Level form: value == twr(level, x) approximately, canonicalized so that
  // x < 2^49 and (when level > 0) x >= 49.
  void level_form(int& level, double& x) const;

  std::string to_json() const;  // {"exact": "<dec>"} or {"tower": {...}}

 private:
  TowerValue() = default;
  Kind kind_ = Kind::Exact;
  BigInt exact_;
  int height_ = 0;
  double top_ = 0;
  std::shared_ptr<TowerValue> a_, b_;  // Power: base; Quotient: num, den
  double expo_ = 1;
};

// -1, 0, +1 as usual; nullopt when the two values are too close for the
// approximate level-form comparison to be trusted.  Exact vs exact is exact.
std::optional<int> tv_compare(const TowerValue& a, const TowerValue& b);
// True when tv_compare says a <= b (strictly trusted).
bool tv_leq(const TowerValue& a, const TowerValue& b);

// --- Depth guarantees sufficient for the finders (host depths making the
// --- corresponding monochromatic / type-monochromatic witnesses exist) ----

// Comparable pairs, k colors, target depth d: host depth (2k)^(dk) suffices.
TowerValue bound_left_right(int d, int k);
// Incomparable pairs: twr(3dk + log*(4k) + 3, 1).
TowerValue bound_incomparable(int d, int k);
// All pairs at once: (twr(3dk + log*(4k) + 4, 1))^(5 k^2 log2 k).
TowerValue bound_all_pairs(int d, int k);
// Simplified envelope for the same: twr(8dk, 1).
TowerValue bound_all_pairs_simple(int d, int k);
// m-chains, closed form: twr(m, 5 * 2^(m-2) * d * k^(2^(m-1)) * log2 k).
TowerValue bound_chains_closed(int m, int d, int k);
// m-chains of one fixed chain type: twr(m, 5 * 2^(m-2) * d * k * log2 k).
TowerValue bound_chains_single_type(int m, int d, int k);
// m-chains via the recursion D(d, 1, k) = dk,
// D(d, m, k) = k^(2 * D(d, m-1, k^2)^(m-1)).
TowerValue bound_chains_recursive(int m, int d, int k);

// Envelope coefficient for the m-subset recursion, with base quantity
// R = dk:  c_i = 4 + sum_{j=3..i} max(1, log_iter(j-2, 2 * 2^(m-j) * j *
// log2 k)) / (2^(m-2) * R * log2 k).  Stays below 5.
double c_coefficient(int m, int d, int k);
// twr(m, c_m * 2^(m-2) * dk * log2 k), the m-subset depth envelope.
TowerValue bound_msubsets_envelope(int m, int d, int k);

// Bipartite meta-coloring count: C(d, 1 + floor(t)) * 2^(d * 2^t) with
// t = d / (5 k log2 k).
TowerValue alpha(int d, int k);

// Upper bound on the number of depth-d subtrees of a depth-n host:
// C(n+1... uses C(n, d+1) * 2^(n * 2^d); exact when the exponent is small.
TowerValue subtree_count_bound(int n, int d);

// Guaranteed type-monochromatic subtree depth extracted from the
// learning-theoretic reduction: log_iter(m+1, n) / 2^(35 * 2^m * m *
// log2(max(m, 2))).  (The coefficient 35 is the pinned constant; the
// m*log2(m) factor uses max(m,2) so m=1 stays positive.)
TowerValue privacy_depth_guarantee(const BigInt& n, int m);

}  // namespace ramsey
