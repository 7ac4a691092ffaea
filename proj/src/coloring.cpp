#include "ramsey/coloring.hpp"

#include <algorithm>

#include <json.hpp>

namespace ramsey {

using nlohmann::json;

std::uint64_t mix_hash(const std::string& key, std::uint64_t seed) {
  // FNV-1a over the key, then a splitmix64 finalizer with the seed folded in.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::uint64_t z = h + seed * 0x9e3779b97f4a7c15ull + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Coloring Coloring::from_table(int host_depth, int arity, int num_colors,
                              Scope scope,
                              std::map<std::string, int> assignments,
                              std::string scope_detail) {
  Coloring c;
  c.host_depth_ = host_depth;
  c.arity_ = arity;
  c.num_colors_ = num_colors;
  c.scope_ = scope;
  c.scope_detail_ = std::move(scope_detail);
  c.table_ = std::move(assignments);
  c.generator_ = "table";
  return c;
}

Coloring Coloring::from_function(int host_depth, int arity, int num_colors,
                                 Scope scope, Fn fn, std::string generator,
                                 std::string params_json, std::uint64_t seed,
                                 std::string scope_detail) {
  Coloring c;
  c.host_depth_ = host_depth;
  c.arity_ = arity;
  c.num_colors_ = num_colors;
  c.scope_ = scope;
  c.scope_detail_ = std::move(scope_detail);
  c.fn_ = std::move(fn);
  c.generator_ = std::move(generator);
  c.params_json_ = std::move(params_json);
  c.seed_ = seed;
  return c;
}

std::optional<int> Coloring::try_color(const std::vector<Path>& subset) const {
  if (static_cast<int>(subset.size()) != arity_) return std::nullopt;
  if (table_) {
    auto it = table_->find(subset_key(subset));
    if (it == table_->end()) return std::nullopt;
    return it->second;
  }
  return fn_(subset);
}

int Coloring::color_of(const std::vector<Path>& subset) const {
  auto c = try_color(subset);
  if (!c)
    throw OutOfScope("coloring: subset out of scope: " + subset_key(subset));
  return *c;
}

// --- Generators -------------------------------------------------------------

Coloring type_coloring(int host_depth, int m) {
  int k = static_cast<int>(tau(m));
  auto fn = [m](const std::vector<Path>& s) -> std::optional<int> {
    if (static_cast<int>(s.size()) != m) return std::nullopt;
    return type_index(subset_type(s));
  };
  return Coloring::from_function(host_depth, m, k, Scope::AllSubsets, fn,
                                 "type", json{{"m", m}}.dump());
}

Coloring skew_triplet_coloring(int host_depth) {
  // Chain of two plus a single vertex on the other side of their meet.
  // Single hanging to the right of the chain: red (0); to the left: blue (1).
  auto red1 = subset_type({"0", "00", "1"}).canonical;
  auto red2 = subset_type({"0", "01", "1"}).canonical;
  auto blue1 = subset_type({"0", "1", "10"}).canonical;
  auto blue2 = subset_type({"0", "1", "11"}).canonical;
  auto fn = [=](const std::vector<Path>& s) -> std::optional<int> {
    if (s.size() != 3) return std::nullopt;
    auto c = subset_type(s).canonical;
    if (c == red1 || c == red2) return 0;
    if (c == blue1 || c == blue2) return 1;
    return std::nullopt;
  };
  return Coloring::from_function(host_depth, 3, 2, Scope::AllSubsets, fn,
                                 "skew-triplets", "{}");
}

Coloring depth_pair_coloring(int host_depth) {
  auto fn = [](const std::vector<Path>& sub) -> std::optional<int> {
    if (sub.size() != 2) return std::nullopt;
    auto s = sorted_paths(sub);
    Relation r = relation(s[1], s[0]);
    if (r == Relation::LeftDescendant) return 0;
    if (r == Relation::RightDescendant) return 1;
    Path w = lca(s[0], s[1]);
    const Path& left = (s[0][w.size()] == '0') ? s[0] : s[1];
    const Path& right = (&left == &s[0]) ? s[1] : s[0];
    return depth_of(left) >= depth_of(right) ? 2 : 3;
  };
  return Coloring::from_function(host_depth, 2, 4, Scope::AllSubsets, fn,
                                 "depth-pairs", "{}");
}

namespace {

// Vertices of an antichain in left-to-right order (each pair splits at its
// meet, so plain character comparison orders them).
std::vector<Path> left_to_right(std::vector<Path> s) {
  std::sort(s.begin(), s.end());
  return s;
}

int factorial(int m) {
  int f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// Lexicographic rank of the permutation given by host depths in
// left-to-right order, ties broken by position.
int depth_permutation_rank(const std::vector<Path>& ltr) {
  int m = static_cast<int>(ltr.size());
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ltr[a].size() < ltr[b].size();
  });
  std::vector<int> perm(m);  // perm[i] = depth rank of position i
  for (int r = 0; r < m; ++r) perm[order[r]] = r;
  int rank = 0;
  for (int i = 0; i < m; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < m; ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank += smaller * factorial(m - 1 - i);
  }
  return rank;
}

}  // namespace

Coloring chain_antichain_coloring(int host_depth, int m) {
  if (m < 2)
    throw std::invalid_argument("chain_antichain_coloring: m must be >= 2");
  int k = (1 << (m - 1)) + factorial(m);
  auto fn = [m](const std::vector<Path>& s) -> std::optional<int> {
    if (static_cast<int>(s.size()) != m) return std::nullopt;
    if (is_chain(s)) return chain_type(s).index();
    bool antichain = true;
    for (std::size_t i = 0; i < s.size() && antichain; ++i)
      for (std::size_t j = i + 1; j < s.size() && antichain; ++j)
        if (relation(s[i], s[j]) != Relation::Incomparable) antichain = false;
    if (!antichain) return std::nullopt;
    return (1 << (m - 1)) + depth_permutation_rank(left_to_right(s));
  };
  return Coloring::from_function(host_depth, m, k, Scope::AllSubsets, fn,
                                 "chain-antichain", json{{"m", m}}.dump());
}

Coloring random_coloring(int host_depth, int m, int k, std::uint64_t seed) {
  auto fn = [m, k, seed](const std::vector<Path>& s) -> std::optional<int> {
    if (static_cast<int>(s.size()) != m) return std::nullopt;
    return static_cast<int>(mix_hash(subset_key(s), seed) % k);
  };
  return Coloring::from_function(host_depth, m, k, Scope::AllSubsets, fn,
                                 "random", json{{"m", m}, {"k", k}}.dump(),
                                 seed);
}

Coloring random_type_coloring(int host_depth, const SubsetType& type, int k,
                              std::uint64_t seed) {
  auto fn = [type, k, seed](const std::vector<Path>& s) -> std::optional<int> {
    if (static_cast<int>(s.size()) != type.m) return std::nullopt;
    if (!(subset_type(s) == type)) return std::nullopt;
    return static_cast<int>(mix_hash(subset_key(s), seed) % k);
  };
  return Coloring::from_function(
      host_depth, type.m, k, Scope::SingleType, fn, "random-type",
      json{{"m", type.m}, {"k", k}, {"type", type.canonical}}.dump(), seed,
      type.canonical);
}

Coloring random_vertex_coloring(int host_depth, int k, std::uint64_t seed) {
  auto fn = [k, seed](const std::vector<Path>& s) -> std::optional<int> {
    if (s.size() != 1) return std::nullopt;
    return static_cast<int>(mix_hash("v:" + s[0], seed) % k);
  };
  return Coloring::from_function(host_depth, 1, k, Scope::Vertices, fn,
                                 "random-vertex", json{{"k", k}}.dump(), seed);
}

Coloring meet_planted_coloring(int host_depth, int k, std::uint64_t seed) {
  auto fn = [k, seed](const std::vector<Path>& s) -> std::optional<int> {
    if (s.size() != 2) return std::nullopt;
    if (relation(s[0], s[1]) != Relation::Incomparable) return std::nullopt;
    return static_cast<int>(mix_hash("v:" + lca(s[0], s[1]), seed) % k);
  };
  return Coloring::from_function(host_depth, 2, k, Scope::AllSubsets, fn,
                                 "meet-planted", json{{"k", k}}.dump(), seed);
}

Coloring make_generator_coloring(const std::string& name, int host_depth,
                                 const std::string& params_json,
                                 std::uint64_t seed) {
  json p = params_json.empty() ? json::object() : json::parse(params_json);
  auto geti = [&](const char* key, int dflt) {
    return p.contains(key) ? p.at(key).get<int>() : dflt;
  };
  if (name == "type") return type_coloring(host_depth, geti("m", 2));
  if (name == "skew-triplets") return skew_triplet_coloring(host_depth);
  if (name == "depth-pairs") return depth_pair_coloring(host_depth);
  if (name == "chain-antichain")
    return chain_antichain_coloring(host_depth, geti("m", 2));
  if (name == "random")
    return random_coloring(host_depth, geti("m", 2), geti("k", 2), seed);
  if (name == "random-type") {
    SubsetType t{geti("m", 2), p.at("type").get<std::string>()};
    return random_type_coloring(host_depth, t, geti("k", 2), seed);
  }
  if (name == "random-vertex")
    return random_vertex_coloring(host_depth, geti("k", 2), seed);
  if (name == "meet-planted")
    return meet_planted_coloring(host_depth, geti("k", 2), seed);
  throw std::invalid_argument("unknown coloring generator: " + name);
}

// --- Serialization ----------------------------------------------------------

namespace {

std::string scope_name(Scope s) {
  switch (s) {
    case Scope::AllSubsets: return "all";
    case Scope::SingleType: return "type";
    case Scope::SingleChainType: return "chain-type";
    case Scope::Vertices: return "vertices";
    case Scope::CrossPairs: return "cross-pairs";
  }
  return "all";
}

Scope scope_from_name(const std::string& s) {
  if (s == "all") return Scope::AllSubsets;
  if (s == "type") return Scope::SingleType;
  if (s == "chain-type") return Scope::SingleChainType;
  if (s == "vertices") return Scope::Vertices;
  if (s == "cross-pairs") return Scope::CrossPairs;
  throw std::invalid_argument("unknown scope: " + s);
}

}  // namespace

std::string Coloring::to_json() const {
  json j;
  j["schema_version"] = 1;
  j["depth"] = host_depth_;
  j["arity"] = arity_;
  j["colors"] = num_colors_;
  j["scope"] = json{{"kind", scope_name(scope_)}};
  if (!scope_detail_.empty()) j["scope"]["detail"] = scope_detail_;
  if (table_) {
    json rows = json::array();
    for (const auto& [key, color] : *table_) {
      json subset = json::array();
      std::size_t start = 0;
      while (true) {
        std::size_t bar = key.find('|', start);
        subset.push_back(key.substr(start, bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      rows.push_back(json{{"subset", subset}, {"color", color}});
    }
    j["assignments"] = rows;
  } else {
    j["generator"] = json{{"name", generator_},
                          {"params", json::parse(params_json_)},
                          {"seed", seed_}};
  }
  return j.dump(2);
}

Coloring Coloring::from_json(const std::string& txt) {
  json j = json::parse(txt);
  if (j.at("schema_version").get<int>() != 1)
    throw std::invalid_argument("unsupported coloring schema_version");
  int depth = j.at("depth").get<int>();
  int arity = j.at("arity").get<int>();
  int colors = j.at("colors").get<int>();
  Scope scope = scope_from_name(j.at("scope").at("kind").get<std::string>());
  std::string detail;
  if (j.at("scope").contains("detail"))
    detail = j.at("scope").at("detail").get<std::string>();
  if (j.contains("assignments")) {
    std::map<std::string, int> table;
    for (const auto& row : j.at("assignments")) {
      std::vector<Path> subset;
      for (const auto& p : row.at("subset"))
        subset.push_back(p.get<std::string>());
      table[subset_key(subset)] = row.at("color").get<int>();
    }
    return from_table(depth, arity, colors, scope, std::move(table), detail);
  }
  const auto& g = j.at("generator");
  Coloring c = make_generator_coloring(g.at("name").get<std::string>(), depth,
                                       g.at("params").dump(),
                                       g.at("seed").get<std::uint64_t>());
  if (c.arity() != arity || c.num_colors() != colors)
    throw std::invalid_argument(
        "coloring file arity/colors disagree with generator");
  return c;
}

// --- Verification -----------------------------------------------------------

std::optional<Violation> check_monochromatic(const Embedding& e,
                                             const Coloring& c) {
  std::optional<Violation> out;
  std::optional<int> color;
  std::vector<Path> first;
  for_each_subset(e, c.arity(), [&](const std::vector<Path>& s) {
    auto col = c.try_color(s);
    if (!col) return true;
    if (!color) {
      color = col;
      first = s;
      return true;
    }
    if (*col != *color) {
      out = Violation{first, s, "two in-scope subsets with distinct colors"};
      return false;
    }
    return true;
  });
  return out;
}

std::optional<Violation> check_type_monochromatic(const Embedding& e,
                                                  const Coloring& c) {
  std::optional<Violation> out;
  std::map<std::string, std::pair<int, std::vector<Path>>> seen;
  for_each_subset(e, c.arity(), [&](const std::vector<Path>& s) {
    auto col = c.try_color(s);
    if (!col) return true;
    auto key = subset_type(s).canonical;
    auto [it, fresh] = seen.emplace(key, std::make_pair(*col, s));
    if (!fresh && it->second.first != *col) {
      out = Violation{it->second.second, s,
                      "equal-type subsets with distinct colors"};
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace ramsey
