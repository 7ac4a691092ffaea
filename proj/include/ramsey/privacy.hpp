#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/coloring.hpp"
#include "ramsey/tree.hpp"

namespace ramsey {

// Desk-scale lab for comparison-based learners on an implicit depth-n host
// tree and the interior-point reduction built on top of them.  Hosts are
// never materialized: a branch is a bit string (bit d = the direction taken
// at depth d) and every vertex is its root path.

// One labeled example (x, y): y is the direction the realizing branch takes
// at x (0 = left, 1 = right).
struct LabeledPoint {
  Path x;
  int y = 0;
};

// An ordered realizable sample ((x_1,y_1),...,(x_m,y_m)): the x_i form a
// chain of strictly increasing depth and y_i points from x_i toward
// x_{i+1}; the last label is free.  The label vector (y_1..y_m) is the
// chain type of the (m+1)-chain the sample corresponds to.
using RealizableSample = std::vector<LabeledPoint>;

// Validates the chain + label-consistency invariants; *reason receives a
// description on failure.
bool validate_sample(const RealizableSample& s, std::string* reason = nullptr);

// True if some branch realizes s and passes through x (x not in s).
bool is_compatible(const RealizableSample& s, const Path& x);

// loc_S(x) = max{ i : x_i strictly above x }, 0 if x is above x_1.
// Throws std::invalid_argument if x is incompatible with s or in s.
int loc(const RealizableSample& s, const Path& x);

// S^{+x}: the unique realizable one-point extension when x sits above x_m;
// the 0-labeled extension when x sits below x_m.
RealizableSample extend(const RealizableSample& s, const Path& x);

// Label vector (y_1..y_m) of a sample, packed MSB-first into an integer.
std::vector<int> sample_type(const RealizableSample& s);
int pack_type(const std::vector<int>& bits);
std::string type_bits_string(int packed, int len);

// A hypothesis predicts the outgoing direction at a vertex (1 = right).
using Hypothesis = std::function<int(const Path&)>;

// A learner maps a sample to a distribution over hypotheses.  draw() is
// pure in (sample, seed).  When exact_prob is set it gives
// A_S(x) = Pr_h[h(x) = 1] in closed form; otherwise A_S is estimated by
// averaging draws.
struct Learner {
  bool deterministic = false;
  std::function<Hypothesis(const RealizableSample&, std::uint64_t)> draw;
  std::function<double(const RealizableSample&, const Path&)> exact_prob;
};

// A_S(x): exact for learners exposing exact_prob or deterministic draws,
// else a fixed-size Monte-Carlo estimate (default 10^4 draws).
double eval_prob(const Learner& a, const RealizableSample& s, const Path& x,
                 int draws = 10000);

// The deterministic learner that outputs the leftmost branch realizing the
// sample: on-branch vertices are labeled by the branch, everything else 0.
Learner leftmost_branch_learner();

// p[t][i] for t in {0,1}^(m+1) (packed MSB-first) and i in {0..m}.
struct ComparisonTable {
  int m = 0;
  std::vector<std::vector<double>> p;  // p[t][i], 2^(m+1) rows, m+1 columns

  static ComparisonTable uniform(int m, double value = 0.5);
  std::string to_json() const;  // schema_version 1
  static ComparisonTable from_json(const std::string& txt);
};

// The randomized learner with A_S(x) = p[type(S^{+x})][loc_S(x)] exactly;
// hypotheses flip one independent coin per vertex.  Points in the sample or
// incompatible with it are predicted 0.
Learner table_learner(const ComparisonTable& table);

struct ComparisonCheck {
  bool comparison_based = false;
  ComparisonTable table;     // midpoint of observed A-values per (t,i) cell
  double max_deviation = 0;  // largest |A_S(x) - table entry| observed
  // Worst cell, for diagnostics: two queries with the same (t,i).
  struct Counterexample {
    int type = 0, location = 0;
    RealizableSample sample_low, sample_high;
    Path x_low, x_high;
    double prob_low = 0, prob_high = 0;
  };
  std::optional<Counterexample> counterexample;  // set when not within gamma
};

// Scans every realizable size-m sample supported on the embedding's
// vertices and every compatible test vertex; a learner is gamma-comparison
// based if some table is within gamma of all of them (the midpoint table is
// optimal, so only it is checked).
ComparisonCheck is_comparison_based(const Learner& a, const Embedding& emb,
                                    int m, double gamma);

// Colors an (m+2)-chain by the rounded prediction vector (q_1..q_{m+1}):
// q_i is the multiple of 1/(100m) closest to A_{S^{-i}}(x_i), ties to the
// smaller, packed base-(100m+1) with q_1 most significant.  Non-chains are
// out of scope.  k = (100m+1)^(m+1) must fit in an int, so m <= 2 at desk
// scale.
Coloring build_chain_coloring(const Learner& a, int host_depth, int m);

// ---- Interior-point reduction ----------------------------------------------

// Instance of the interior point problem on [n]: target depths
// d_1 <= ... <= d_m with gaps > window_length(n).  Reads of the depths are
// counted so the post-processing structure of the reduction (the scanning
// stage never touches them) is checkable.
class IppInstance {
 public:
  IppInstance(int n, std::vector<int> depths);

  int n() const { return n_; }
  int m() const { return static_cast<int>(depths_.size()); }
  const std::vector<int>& depths() const {
    ++reads_;
    return depths_;
  }
  long depth_reads() const { return reads_; }

 private:
  int n_ = 0;
  std::vector<int> depths_;
  mutable long reads_ = 0;
};

// l = floor(log2(n)^2): length of the almost-correct windows.
int window_length(int n);

struct ReduceResult {
  int output = 0;            // depth in [1, n]
  bool interior = false;     // d_1 <= output <= d_m
  long scan_depth_reads = 0; // depth reads during the scanning stage
};

// The reduction: sample a uniform branch, label the instance depths by it,
// draw one hypothesis, and output the start depth of the deepest window of
// l consecutive branch points on which the hypothesis agrees with the
// branch on >= 0.9*l labels (n when no window qualifies).
ReduceResult reduce_from_ipp(const Learner& a, const IppInstance& inst,
                             std::uint64_t seed);

// ---- Good-pair diagnostics -------------------------------------------------

struct PrivacyParams {
  double epsilon = 0, delta = 0, alpha = 0, beta = 0;
  double xi = 0, xi_prime = 0;
};

// Default constants for sample size m: epsilon = 1e-3,
// delta = 1/(1e3 m^2), alpha = beta = 1e-4, xi = 17(alpha+beta),
// xi' = 2(e^epsilon - 1 + delta) + 2/(100m) + 18(alpha+beta).
PrivacyParams default_privacy_params(int m);

struct PairFlags {
  int index = 0;  // the pair (x_index, x_index+1), 1-based
  bool sign_change = false;
  bool matching_neighbors = false;
  bool correct = false;
  bool a_good = false;
};

// Per-consecutive-pair flags of a sample lying on branch b (a bit string of
// length >= depth of the last point + 1).
std::vector<PairFlags> good_pair_diagnostics(const RealizableSample& s,
                                             const std::string& b,
                                             const Learner& a,
                                             const PrivacyParams& params);

}  // namespace ramsey
