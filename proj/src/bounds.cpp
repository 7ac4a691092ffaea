#include "ramsey/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace ramsey {

namespace {

// Floating level form: value = twr(L, x).  Canonical: x < 2^49, and x is
// lowered back (exponentiated) whenever that keeps it below 2^49.
struct LF {
  int L = 0;
  double x = 0;
};

constexpr double kRaise = 5.6e14;  // ~2^49

LF canon(LF v) {
  while (v.x >= kRaise) {
    v.x = std::log2(v.x);
    ++v.L;
  }
  while (v.L > 0 && v.x < 49) {
    v.x = std::exp2(v.x);
    --v.L;
  }
  return v;
}

LF lf_of(double x) { return canon({0, x}); }

LF lf_of_bigint(const BigInt& b) {
  if (b < 0) throw std::domain_error("level form of negative value");
  if (b < BigInt(1) << 48) return {0, b.convert_to<double>()};
  unsigned bits = boost::multiprecision::msb(b);
  double frac = ((b >> (bits - 52)).convert_to<double>()) / std::exp2(52);
  return canon({1, bits + std::log2(frac)});
}

LF lf_log2(LF v) {
  if (v.L >= 1) return canon({v.L - 1, v.x});
  if (v.x <= 0) throw std::domain_error("log2 of non-positive value");
  return {0, std::log2(v.x)};
}

LF lf_pow2(LF v) {
  if (v.L == 0 && v.x < 49) return {0, std::exp2(v.x)};
  return canon({v.L + 1, v.x});
}

int lf_cmp_raw(LF a, LF b) {
  a = canon(a);
  b = canon(b);
  if (a.L != b.L) return a.L < b.L ? -1 : 1;
  double scale = std::max({std::fabs(a.x), std::fabs(b.x), 1.0});
  if (std::fabs(a.x - b.x) <= 1e-9 * scale) return 0;
  return a.x < b.x ? -1 : 1;
}

LF lf_add(LF a, LF b) {
  if (a.L == 0 && b.L == 0) return canon({0, a.x + b.x});
  return lf_cmp_raw(a, b) >= 0 ? a : b;  // dominant term
}

LF lf_sub(LF a, LF b) {
  if (a.L == 0 && b.L == 0) return {0, a.x - b.x};
  int c = lf_cmp_raw(a, b);
  if (c > 0) return a;  // dominant term
  throw std::domain_error("level-form subtraction would go hugely negative");
}

LF lf_mul(LF a, LF b) {
  if (a.L == 0 && b.L == 0 && std::fabs(a.x) < 1e150 &&
      std::fabs(b.x) < 1e150)
    return canon({0, a.x * b.x});
  return lf_pow2(lf_add(lf_log2(a), lf_log2(b)));
}

// v^e for a plain non-negative scalar exponent.
LF lf_pow(LF v, double e) {
  if (e == 0) return {0, 1};
  LF l = lf_log2(v);
  LF el = (l.L == 0) ? LF{0, e * l.x} : lf_mul({0, e}, l);
  return lf_pow2(el);
}

BigInt binom_exact(int n, int r) {
  if (r < 0 || r > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= r; ++i) {
    out *= (n - r + i);
    out /= i;
  }
  return out;
}

}  // namespace

BigInt twr_exact(int t, const BigInt& x) {
  BigInt v = x;
  for (int i = 0; i < t; ++i) {
    if (v < 0) throw std::domain_error("twr of negative value");
    if (v > (1 << 20))
      throw std::overflow_error("twr_exact: result exceeds 2^(2^20)");
    v = BigInt(1) << v.convert_to<unsigned>();
  }
  return v;
}

BigInt log_iter(int t, BigInt x) {
  for (int i = 0; i < t; ++i) {
    if (x <= 0) throw std::domain_error("log_iter: log of non-positive value");
    x = boost::multiprecision::msb(x);  // floor(log2)
  }
  return x;
}

int log_star(const BigInt& x) {
  BigInt v = x;
  int t = 0;
  while (v > 1) {
    v = boost::multiprecision::msb(v);
    ++t;
  }
  return t;
}

// --- TowerValue -------------------------------------------------------------

TowerValue TowerValue::from_exact(BigInt v) {
  TowerValue t;
  t.kind_ = Kind::Exact;
  t.exact_ = std::move(v);
  return t;
}

TowerValue TowerValue::tower(int height, double top) {
  // Collapse to Exact while the value stays below 2^256.
  if (top >= 0 && top == std::floor(top) && top < 1e18) {
    BigInt v(static_cast<long long>(top));
    int h = height;
    while (h > 0 && v <= 256) {
      v = BigInt(1) << v.convert_to<unsigned>();
      --h;
    }
    if (h == 0 && boost::multiprecision::msb(v + 1) <= 256)
      return from_exact(v);
  }
  TowerValue t;
  t.kind_ = Kind::Tower;
  t.height_ = height;
  t.top_ = top;
  return t;
}

TowerValue TowerValue::power(TowerValue base, double exponent) {
  if (base.kind_ == Kind::Exact && exponent == std::floor(exponent) &&
      exponent >= 0 && exponent < 1e4) {
    BigInt p = 1;
    bool small = true;
    for (int i = 0; i < static_cast<int>(exponent) && small; ++i) {
      p *= base.exact_;
      if (p > BigInt(1) << 256) small = false;
    }
    if (small) return from_exact(p);
  }
  TowerValue t;
  t.kind_ = Kind::Power;
  t.a_ = std::make_shared<TowerValue>(std::move(base));
  t.expo_ = exponent;
  return t;
}

TowerValue TowerValue::quotient(TowerValue num, TowerValue den) {
  if (num.kind_ == Kind::Exact && den.kind_ == Kind::Exact &&
      den.exact_ != 0 && num.exact_ % den.exact_ == 0)
    return from_exact(num.exact_ / den.exact_);
  TowerValue t;
  t.kind_ = Kind::Quotient;
  t.a_ = std::make_shared<TowerValue>(std::move(num));
  t.b_ = std::make_shared<TowerValue>(std::move(den));
  return t;
}

namespace {

LF lf_of_tv(const TowerValue& t);

LF lf_quotient(const TowerValue& num, const TowerValue& den) {
  LF n = lf_of_tv(num), d = lf_of_tv(den);
  if (n.L == 0 && d.L == 0) {
    if (d.x == 0) throw std::domain_error("quotient by zero");
    return canon({0, n.x / d.x});
  }
  if (n.L == 0 && n.x == 0) return {0, 0};
  return lf_pow2(lf_sub(lf_log2(n), lf_log2(d)));
}

LF lf_of_tv(const TowerValue& t) {
  switch (t.kind()) {
    case TowerValue::Kind::Exact:
      return lf_of_bigint(t.exact());
    case TowerValue::Kind::Tower:
      return canon({t.height(), t.top()});
    default:
      break;
  }
  // Power / Quotient: evaluated via level_form below.
  int level;
  double x;
  t.level_form(level, x);
  return {level, x};
}

}  // namespace

void TowerValue::level_form(int& level, double& x) const {
  LF v{};
  switch (kind_) {
    case Kind::Exact:
      v = lf_of_bigint(exact_);
      break;
    case Kind::Tower:
      v = canon({height_, top_});
      break;
    case Kind::Power:
      v = lf_pow(lf_of_tv(*a_), expo_);
      break;
    case Kind::Quotient:
      v = lf_quotient(*a_, *b_);
      break;
  }
  level = v.L;
  x = v.x;
}

std::string TowerValue::to_json() const {
  nlohmann::json j;
  if (kind_ == Kind::Exact) {
    j["exact"] = exact_.str();
  } else {
    int level;
    double x;
    level_form(level, x);
    j["tower"] = nlohmann::json{{"height", level}, {"top", x}};
  }
  return j.dump();
}

std::optional<int> tv_compare(const TowerValue& a, const TowerValue& b) {
  if (a.kind() == TowerValue::Kind::Exact &&
      b.kind() == TowerValue::Kind::Exact) {
    if (a.exact() < b.exact()) return -1;
    if (a.exact() > b.exact()) return 1;
    return 0;
  }
  int la, lb;
  double xa, xb;
  a.level_form(la, xa);
  b.level_form(lb, xb);
  if (la != lb) return la < lb ? -1 : 1;
  double scale = std::max({std::fabs(xa), std::fabs(xb), 1.0});
  if (std::fabs(xa - xb) <= 1e-6 * scale) return std::nullopt;  // too close
  return xa < xb ? -1 : 1;
}

bool tv_leq(const TowerValue& a, const TowerValue& b) {
  auto c = tv_compare(a, b);
  return c.has_value() && *c <= 0;
}

// --- Named bounds -----------------------------------------------------------

TowerValue bound_left_right(int d, int k) {
  BigInt v = 1;
  for (int i = 0; i < d * k; ++i) v *= 2 * k;
  return TowerValue::from_exact(v);  // (2k)^(dk) == 2^(dk log2 2k)
}

TowerValue bound_incomparable(int d, int k) {
  return TowerValue::tower(3 * d * k + log_star(BigInt(4) * k) + 3, 1);
}

TowerValue bound_all_pairs(int d, int k) {
  TowerValue base =
      TowerValue::tower(3 * d * k + log_star(BigInt(4) * k) + 4, 1);
  return TowerValue::power(std::move(base),
                           5.0 * k * k * std::log2(double(k)));
}

TowerValue bound_all_pairs_simple(int d, int k) {
  return TowerValue::tower(8 * d * k, 1);
}

TowerValue bound_chains_closed(int m, int d, int k) {
  double top = 5.0 * std::exp2(m - 2) * d *
               std::pow(double(k), std::exp2(m - 1)) * std::log2(double(k));
  return TowerValue::tower(m, top);
}

TowerValue bound_chains_single_type(int m, int d, int k) {
  double top = 5.0 * std::exp2(m - 2) * d * k * std::log2(double(k));
  return TowerValue::tower(m, top);
}

namespace {

// D(d, 1, k) = dk; D(d, m, k) = k^(2 * D(d, m-1, k^2)^(m-1)), carried with
// log2(k) as the parameter so squaring k never overflows.
LF chains_recursive_lf(int d, int m, double log2k) {
  if (m == 1) return lf_mul({0, double(d)}, lf_pow2({0, log2k}));
  LF inner = chains_recursive_lf(d, m - 1, 2 * log2k);
  LF e = lf_mul({0, 2}, lf_pow(inner, m - 1));
  return lf_pow2(lf_mul(e, {0, log2k}));
}

}  // namespace

TowerValue bound_chains_recursive(int m, int d, int k) {
  if (m == 1) return TowerValue::from_exact(BigInt(d) * k);
  LF v = chains_recursive_lf(d, m, std::log2(double(k)));
  return TowerValue::tower(v.L, v.x);
}

double c_coefficient(int m, int d, int k) {
  double logk = std::log2(double(k));
  double denom = std::exp2(m - 2) * (double(d) * k) * logk;
  double c = 4;
  for (int j = 3; j <= m; ++j) {
    double inner = 2.0 * std::exp2(m - j) * j * logk;
    // Iterated log, clamped below at 1 (the surrounding max(1, .) makes
    // anything that would dip under 2 mid-iteration irrelevant).
    for (int t = 0; t < j - 2; ++t) inner = std::log2(std::max(inner, 2.0));
    c += std::max(1.0, inner) / denom;
  }
  return c;
}

TowerValue bound_msubsets_envelope(int m, int d, int k) {
  double top =
      c_coefficient(m, d, k) * std::exp2(m - 2) * d * k * std::log2(double(k));
  return TowerValue::tower(m, top);
}

TowerValue alpha(int d, int k) {
  double t = double(d) / (5.0 * k * std::log2(double(k)));
  BigInt b = binom_exact(d, 1 + static_cast<int>(std::floor(t)));
  LF v = lf_mul(lf_of_bigint(b), lf_pow2({0, d * std::exp2(t)}));
  if (v.L == 0 && v.x < 1e15)
    return TowerValue::from_exact(BigInt(static_cast<long long>(v.x)));
  return TowerValue::tower(v.L, v.x);
}

TowerValue subtree_count_bound(int n, int d) {
  double e = double(n) * std::exp2(d);
  BigInt b = binom_exact(n, d + 1);
  if (e <= 4096)
    return TowerValue::from_exact(b * (BigInt(1) << static_cast<unsigned>(e)));
  LF v = lf_mul(lf_of_bigint(b), lf_pow2({0, e}));
  return TowerValue::tower(v.L, v.x);
}

TowerValue privacy_depth_guarantee(const BigInt& n, int m) {
  BigInt num;
  try {
    num = log_iter(m + 1, n);
  } catch (const std::domain_error&) {
    num = 0;  // host too shallow for m+1 iterated logs
  }
  double e = 35.0 * std::exp2(m) * m * std::log2(std::max(double(m), 2.0));
  LF den = lf_pow2({0, e});
  return TowerValue::quotient(TowerValue::from_exact(num),
                              TowerValue::tower(den.L, den.x));
}

}  // namespace ramsey
