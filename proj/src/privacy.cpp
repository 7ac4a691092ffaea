#include "ramsey/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ramsey {

namespace {

bool fail(std::string* reason, const std::string& what) {
  if (reason) *reason = what;
  return false;
}

// Direction taken at ancestor a on the way to its strict descendant b.
int step_toward(const Path& a, const Path& b) { return b[a.size()] - '0'; }

void require_valid(const RealizableSample& s) {
  std::string reason;
  if (!validate_sample(s, &reason))
    throw std::invalid_argument("sample not realizable: " + reason);
}

}  // namespace

bool validate_sample(const RealizableSample& s, std::string* reason) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].y != 0 && s[i].y != 1) return fail(reason, "label not a bit");
    if (i + 1 == s.size()) break;
    const Path& a = s[i].x;
    const Path& b = s[i + 1].x;
    if (!(a.size() < b.size() && is_ancestor(a, b)))
      return fail(reason, "points do not form a descending chain");
    if (step_toward(a, b) != s[i].y)
      return fail(reason, "label disagrees with the branch direction");
  }
  return true;
}

bool is_compatible(const RealizableSample& s, const Path& x) {
  int i = 0;
  const int m = static_cast<int>(s.size());
  for (int j = 0; j < m; ++j) {
    if (s[j].x == x) return false;
    if (s[j].x.size() < x.size() && is_ancestor(s[j].x, x)) i = j + 1;
  }
  if (i < m) return x.size() < s[i].x.size() && is_ancestor(x, s[i].x);
  return m == 0 || step_toward(s[m - 1].x, x) == s[m - 1].y;
}

int loc(const RealizableSample& s, const Path& x) {
  require_valid(s);
  if (!is_compatible(s, x))
    throw std::invalid_argument("test point incompatible with the sample");
  int i = 0;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j].x.size() < x.size() && is_ancestor(s[j].x, x))
      i = static_cast<int>(j) + 1;
  return i;
}

RealizableSample extend(const RealizableSample& s, const Path& x) {
  const int i = loc(s, x);
  const int m = static_cast<int>(s.size());
  const int y = i < m ? step_toward(x, s[i].x) : 0;
  RealizableSample out = s;
  out.insert(out.begin() + i, LabeledPoint{x, y});
  return out;
}

std::vector<int> sample_type(const RealizableSample& s) {
  std::vector<int> bits;
  bits.reserve(s.size());
  for (const auto& p : s) bits.push_back(p.y);
  return bits;
}

int pack_type(const std::vector<int>& bits) {
  int t = 0;
  for (int b : bits) t = t * 2 + b;
  return t;
}

std::string type_bits_string(int packed, int len) {
  std::string s(len, '0');
  for (int j = len - 1; j >= 0; --j, packed /= 2) s[j] = '0' + packed % 2;
  return s;
}

double eval_prob(const Learner& a, const RealizableSample& s, const Path& x,
                 int draws) {
  if (a.exact_prob) return a.exact_prob(s, x);
  if (a.deterministic) return a.draw(s, 0)(x);
  long hits = 0;
  for (int j = 0; j < draws; ++j) hits += a.draw(s, j + 1)(x) ? 1 : 0;
  return static_cast<double>(hits) / draws;
}

Learner leftmost_branch_learner() {
  // The leftmost realizing branch is forced down to the last sample point's
  // labeled edge and goes left below; off-branch vertices are labeled 0.
  auto predict = [](const RealizableSample& s, const Path& x) -> int {
    require_valid(s);
    Path prefix;
    if (!s.empty()) {
      prefix = s.back().x;
      prefix.push_back(static_cast<char>('0' + s.back().y));
    }
    if (x.size() < prefix.size() && prefix.compare(0, x.size(), x) == 0)
      return prefix[x.size()] - '0';
    return 0;
  };
  Learner a;
  a.deterministic = true;
  a.draw = [predict](const RealizableSample& s, std::uint64_t) {
    require_valid(s);
    return [predict, s](const Path& x) { return predict(s, x); };
  };
  a.exact_prob = [predict](const RealizableSample& s, const Path& x) {
    return static_cast<double>(predict(s, x));
  };
  return a;
}

ComparisonTable ComparisonTable::uniform(int m, double value) {
  ComparisonTable t;
  t.m = m;
  t.p.assign(std::size_t{1} << (m + 1),
             std::vector<double>(m + 1, value));
  return t;
}

std::string ComparisonTable::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["m"] = m;
  nlohmann::json rows = nlohmann::json::object();
  for (std::size_t t = 0; t < p.size(); ++t)
    rows[type_bits_string(static_cast<int>(t), m + 1)] = p[t];
  j["p"] = rows;
  return j.dump(2);
}

ComparisonTable ComparisonTable::from_json(const std::string& txt) {
  nlohmann::json j = nlohmann::json::parse(txt);
  ComparisonTable t = uniform(j.at("m").get<int>());
  for (const auto& [bits, row] : j.at("p").items()) {
    if (static_cast<int>(bits.size()) != t.m + 1)
      throw std::invalid_argument("comparison table: bad type key " + bits);
    std::vector<int> tb;
    for (char c : bits) tb.push_back(c - '0');
    auto& dst = t.p[pack_type(tb)];
    dst = row.get<std::vector<double>>();
    if (static_cast<int>(dst.size()) != t.m + 1)
      throw std::invalid_argument("comparison table: bad row length");
  }
  return t;
}

Learner table_learner(const ComparisonTable& table) {
  auto prob = [table](const RealizableSample& s, const Path& x) -> double {
    require_valid(s);
    if (static_cast<int>(s.size()) != table.m)
      throw std::invalid_argument("table learner: sample size mismatch");
    if (!is_compatible(s, x)) return 0.0;  // off-branch points predicted 0
    const int i = loc(s, x);
    const int t = pack_type(sample_type(extend(s, x)));
    return table.p[t][i];
  };
  Learner a;
  a.deterministic = false;
  a.exact_prob = prob;
  a.draw = [prob](const RealizableSample& s, std::uint64_t seed) {
    return [prob, s, seed](const Path& x) {
      const double p = prob(s, x);
      const double u = static_cast<double>(mix_hash("privacy:" + x, seed)) /
                       18446744073709551616.0;  // 2^64
      return u < p ? 1 : 0;
    };
  };
  return a;
}

ComparisonCheck is_comparison_based(const Learner& a, const Embedding& emb,
                                    int m, double gamma) {
  struct Cell {
    bool seen = false;
    double lo = 0, hi = 0;
    RealizableSample s_lo, s_hi;
    Path x_lo, x_hi;
  };
  const std::size_t types = std::size_t{1} << (m + 1);
  std::vector<std::vector<Cell>> cells(types, std::vector<Cell>(m + 1));

  for_each_subset(emb, m, [&](const std::vector<Path>& chain) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if (!(chain[i].size() < chain[i + 1].size() &&
            is_ancestor(chain[i], chain[i + 1])))
        return true;
    // Both labelings of the last point are realizable in the host.
    for (int last = 0; last < 2; ++last) {
      RealizableSample s;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        const int y = i + 1 < chain.size()
                          ? step_toward(chain[i], chain[i + 1])
                          : last;
        s.push_back(LabeledPoint{chain[i], y});
      }
      for (const Path& x : emb.vertices) {
        if (!is_compatible(s, x)) continue;
        const int i = loc(s, x);
        const int t = pack_type(sample_type(extend(s, x)));
        const double v = eval_prob(a, s, x);
        Cell& c = cells[t][i];
        if (!c.seen || v < c.lo) {
          c.lo = v;
          c.s_lo = s;
          c.x_lo = x;
        }
        if (!c.seen || v > c.hi) {
          c.hi = v;
          c.s_hi = s;
          c.x_hi = x;
        }
        c.seen = true;
      }
    }
    return true;
  });

  ComparisonCheck out;
  out.table = ComparisonTable::uniform(m);
  const Cell* worst = nullptr;
  int worst_t = 0, worst_i = 0;
  for (std::size_t t = 0; t < types; ++t)
    for (int i = 0; i <= m; ++i) {
      const Cell& c = cells[t][i];
      if (!c.seen) continue;
      out.table.p[t][i] = (c.lo + c.hi) / 2;
      const double dev = (c.hi - c.lo) / 2;
      if (dev > out.max_deviation) {
        out.max_deviation = dev;
        worst = &c;
        worst_t = static_cast<int>(t);
        worst_i = i;
      }
    }
  out.comparison_based = out.max_deviation <= gamma + 1e-12;
  if (!out.comparison_based && worst) {
    ComparisonCheck::Counterexample ce;
    ce.type = worst_t;
    ce.location = worst_i;
    ce.sample_low = worst->s_lo;
    ce.sample_high = worst->s_hi;
    ce.x_low = worst->x_lo;
    ce.x_high = worst->x_hi;
    ce.prob_low = worst->lo;
    ce.prob_high = worst->hi;
    out.counterexample = ce;
  }
  return out;
}

Coloring build_chain_coloring(const Learner& a, int host_depth, int m) {
  if (m < 1 || m > 2)
    throw std::invalid_argument(
        "chain coloring: need 1 <= m <= 2 so the palette fits in an int");
  const int denom = 100 * m;
  int k = 1;
  for (int i = 0; i <= m; ++i) k *= denom + 1;
  auto fn = [m, denom,
             a](const std::vector<Path>& unsorted) -> std::optional<int> {
    const std::vector<Path> subset = sorted_paths(unsorted);
    for (std::size_t i = 0; i + 1 < subset.size(); ++i)
      if (!(subset[i].size() < subset[i + 1].size() &&
            is_ancestor(subset[i], subset[i + 1])))
        return std::nullopt;  // only chains are colored
    RealizableSample s;  // the size-(m+1) sample of the (m+2)-chain
    for (int i = 0; i <= m; ++i)
      s.push_back(
          LabeledPoint{subset[i], step_toward(subset[i], subset[i + 1])});
    int id = 0;
    for (int i = 0; i <= m; ++i) {
      RealizableSample rest = s;
      rest.erase(rest.begin() + i);
      const double v = eval_prob(a, rest, s[i].x);
      int r = static_cast<int>(std::floor(v * denom));
      r = std::clamp(r, 0, denom);
      // Closest multiple of 1/denom, ties to the smaller numerator.
      if (r < denom &&
          (r + 1) / static_cast<double>(denom) - v < v - r / static_cast<double>(denom))
        ++r;
      id = id * (denom + 1) + r;
    }
    return id;
  };
  std::ostringstream params;
  params << "{\"m\": " << m << "}";
  return Coloring::from_function(host_depth, m + 2, k, Scope::AllSubsets, fn,
                                 "chain-prediction", params.str());
}

// ---- Interior-point reduction ----------------------------------------------

int window_length(int n) {
  if (n < 2) throw std::invalid_argument("window length: need depth >= 2");
  const double lg = std::log2(static_cast<double>(n));
  return static_cast<int>(std::floor(lg * lg));
}

IppInstance::IppInstance(int n, std::vector<int> depths)
    : n_(n), depths_(std::move(depths)) {
  if (n_ < 2) throw std::invalid_argument("instance depth too small");
  if (depths_.empty()) throw std::invalid_argument("instance has no points");
  const int l = window_length(n_);
  for (std::size_t i = 0; i < depths_.size(); ++i) {
    if (depths_[i] < 1 || depths_[i] > n_)
      throw std::invalid_argument("instance point out of range");
    if (i > 0 && depths_[i] - depths_[i - 1] <= l)
      throw std::invalid_argument("instance gap");
  }
}

ReduceResult reduce_from_ipp(const Learner& a, const IppInstance& inst,
                             std::uint64_t seed) {
  const int n = inst.n();
  const int l = window_length(n);
  std::mt19937_64 rng(seed);

  // Stage 1: sample the branch and label the instance depths by it.  Bit d
  // of the branch is the direction taken at depth d (one extra bit so every
  // point at depth <= n has an outgoing label).
  std::string branch(n + 1, '0');
  for (int d = 0; d <= n; ++d) branch[d] = static_cast<char>('0' + (rng() & 1));
  RealizableSample s;
  for (int d : inst.depths())
    s.push_back(LabeledPoint{branch.substr(0, d), branch[d] - '0'});
  Hypothesis h = a.draw(s, rng());

  // Stage 2: scan for long almost-correct windows.  Touches only the
  // hypothesis and the branch; depth reads here would break the
  // post-processing structure, so they are counted.
  const long reads_before = inst.depth_reads();
  std::vector<int> agree(n + 1, 0);
  for (int d = 1; d <= n; ++d)
    agree[d] = h(branch.substr(0, d)) == branch[d] - '0' ? 1 : 0;
  int best = -1, window = 0;
  for (int d = 1; d <= n; ++d) {
    window += agree[d];
    if (d > l) window -= agree[d - l];
    if (d >= l && 10 * window >= 9 * l) best = d - l + 1;
  }
  ReduceResult out;
  out.output = best == -1 ? n : best;
  out.scan_depth_reads = inst.depth_reads() - reads_before;
  const auto& ds = inst.depths();
  out.interior = ds.front() <= out.output && out.output <= ds.back();
  return out;
}

// ---- Good-pair diagnostics -------------------------------------------------

PrivacyParams default_privacy_params(int m) {
  if (m < 1) throw std::invalid_argument("need m >= 1");
  PrivacyParams p;
  p.epsilon = 1e-3;
  p.delta = 1.0 / (1e3 * m * m);
  p.alpha = 1e-4;
  p.beta = 1e-4;
  p.xi = 17 * (p.alpha + p.beta);
  p.xi_prime = 2 * (std::exp(p.epsilon) - 1 + p.delta) + 2.0 / (100 * m) +
               18 * (p.alpha + p.beta);
  return p;
}

std::vector<PairFlags> good_pair_diagnostics(const RealizableSample& s,
                                             const std::string& b,
                                             const Learner& a,
                                             const PrivacyParams& params) {
  require_valid(s);
  const int m = static_cast<int>(s.size());
  for (const auto& p : s) {
    if (p.x.size() >= b.size() ||
        b.compare(0, p.x.size(), p.x) != 0 || b[p.x.size()] - '0' != p.y)
      throw std::invalid_argument("sample does not lie on the branch");
  }
  std::vector<PairFlags> out;
  for (int i = 1; i < m; ++i) {
    PairFlags f;
    f.index = i;
    const int yi = s[i - 1].y, yj = s[i].y;
    f.sign_change = yi != yj;

    // Neighbors on the branch strictly between the surrounding sample
    // points (the branch start / end when the pair sits at an edge of s).
    const int before_lo = i >= 2 ? static_cast<int>(s[i - 2].x.size()) + 1 : 0;
    const int before_hi = static_cast<int>(s[i - 1].x.size());  // exclusive
    const int after_lo = static_cast<int>(s[i].x.size()) + 1;
    const int after_hi = i + 1 < m ? static_cast<int>(s[i + 1].x.size())
                                   : static_cast<int>(b.size()) - 1;
    bool before = false, after = false;
    for (int d = before_lo; d < before_hi; ++d)
      if (b[d] - '0' == yi) before = true;
    for (int d = after_lo; d < after_hi; ++d)
      if (b[d] - '0' == yj) after = true;
    f.matching_neighbors = before && after;

    f.correct = std::abs(eval_prob(a, s, s[i - 1].x) - yi) <= params.xi &&
                std::abs(eval_prob(a, s, s[i].x) - yj) <= params.xi;

    f.a_good = true;
    for (int d = static_cast<int>(s[i - 1].x.size()) + 1;
         d < static_cast<int>(s[i].x.size()); ++d) {
      const Path x = b.substr(0, d);
      if (std::abs(eval_prob(a, s, x) - (b[d] - '0')) > params.xi_prime) {
        f.a_good = false;
        break;
      }
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace ramsey
