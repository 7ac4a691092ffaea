// Unified command-line front end: every library operation behind one binary
// with JSON output.  Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ramsey/bounds.hpp"
#include "ramsey/coloring.hpp"
#include "ramsey/finders.hpp"
#include "ramsey/pigeonhole.hpp"
#include "ramsey/privacy.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/types.hpp"

using nlohmann::json;
using namespace ramsey;

namespace {

std::string g_output_path;  // empty: stdout

void emit(const json& j) {
  if (g_output_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(g_output_path);
  if (!f) throw std::runtime_error("cannot write " + g_output_path);
  f << j.dump(2) << "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json embedding_json(const Embedding& e) {
  return json{{"depth", e.depth},
              {"level_aligned", e.level_aligned},
              {"vertices", e.vertices}};
}

Embedding embedding_from_json(const json& j) {
  Embedding e;
  e.depth = j.at("depth").get<int>();
  e.level_aligned = j.at("level_aligned").get<bool>();
  e.vertices = j.at("vertices").get<std::vector<Path>>();
  return e;
}

Coloring load_coloring(const std::string& path) {
  return Coloring::from_json(slurp(path));
}

Learner load_learner(const std::string& name) {
  if (name == "leftmost") return leftmost_branch_learner();
  if (name.rfind("table:", 0) == 0)
    return table_learner(ComparisonTable::from_json(slurp(name.substr(6))));
  throw std::runtime_error("unknown learner: " + name);
}

json table_json(const ComparisonTable& t) {
  return json::parse(t.to_json());
}

json sample_json(const RealizableSample& s) {
  json out = json::array();
  for (const auto& p : s) out.push_back(json{{"x", p.x}, {"y", p.y}});
  return out;
}

json finder_result_json(const FinderResult& r) {
  json j{{"schema_version", 1}, {"witness", embedding_json(r.subtree)}};
  if (r.color) j["color"] = *r.color;
  if (!r.type_colors.empty()) j["type_colors"] = r.type_colors;
  return j;
}

SubsetColorFn subset_fn(const Coloring& c) {
  return [&c](const std::vector<Path>& sub) { return c.color_of(sub); };
}

// ---- types -----------------------------------------------------------------

void cmd_types_count(int m) {
  const BigInt t = tau(m);
  emit(json{{"schema_version", 1}, {"tau", t.str()}});
}

void cmd_types_enumerate(int m) {
  json list = json::array();
  for (const auto& t : enumerate_types(m))
    list.push_back(json{{"m", t.m}, {"canonical", t.canonical}});
  emit(json{{"schema_version", 1},
            {"m", m},
            {"count", list.size()},
            {"types", list}});
}

// ---- colorings -------------------------------------------------------------

void cmd_colorings_generate(const std::string& name, int depth,
                            const std::string& params, std::uint64_t seed) {
  Coloring c = make_generator_coloring(name, depth, params, seed);
  emit(json::parse(c.to_json()));
}

void cmd_colorings_inspect(const std::string& path) {
  Coloring c = load_coloring(path);
  std::map<std::string, std::uint64_t> histogram;
  std::uint64_t in_scope = 0, total = 0;
  const std::uint64_t limit = oracle_limit_from_env();
  bool complete = for_each_subset(
      whole_tree(c.host_depth()), c.arity(),
      [&](const std::vector<Path>& sub) {
        if (++total > limit) return false;
        if (auto col = c.try_color(sub)) {
          ++in_scope;
          ++histogram[std::to_string(*col)];
        }
        return true;
      });
  json j{{"schema_version", 1},
         {"depth", c.host_depth()},
         {"arity", c.arity()},
         {"colors", c.num_colors()},
         {"backing", c.is_extensional() ? "table" : c.generator()},
         {"scan_complete", complete}};
  if (complete) {
    j["in_scope_subsets"] = in_scope;
    j["histogram"] = histogram;
  }
  emit(j);
}

// ---- php -------------------------------------------------------------------

void cmd_php(const std::string& coloring_path, std::vector<int> budgets) {
  Coloring c = load_coloring(coloring_path);
  if (c.arity() != 1)
    throw std::runtime_error("php needs a vertex coloring (arity 1)");
  auto chi = [&c](const Path& v) { return c.color_of({v}); };
  auto r = php_find(whole_tree(c.host_depth()), chi, budgets);
  json j = embedding_json(r.subtree);
  j["schema_version"] = 1;
  j["color"] = r.color;
  emit(j);
}

// ---- find ------------------------------------------------------------------

std::optional<int> family_color(const Coloring& c, const std::string& target,
                                const std::vector<Path>& sub) {
  if (target == "pairs-comparable") {
    const Relation r = relation(sub[1], sub[0]);
    if (r != Relation::LeftDescendant) return std::nullopt;
  } else if (target == "pairs-incomparable") {
    if (relation(sub[0], sub[1]) != Relation::Incomparable)
      return std::nullopt;
  } else if (target == "chains") {
    if (!is_chain(sub)) return std::nullopt;
  }
  return c.try_color(sub);
}

void cmd_find(const std::string& coloring_path, const std::string& target,
              const std::string& strategy) {
  Coloring c = load_coloring(coloring_path);
  const Embedding host = whole_tree(c.host_depth());
  const int k = c.num_colors();

  if (target == "bipartite") {
    const Embedding left = subtree_at(host, 1), right = subtree_at(host, 2);
    auto cross = [&c](const Path& u, const Path& v) {
      return c.color_of({u, v});
    };
    BipartiteResult r = strategy == "oracle"
                            ? oracle_bipartite_best(left, right, cross)
                            : find_bipartite(left, right, cross, k);
    emit(json{{"schema_version", 1},
              {"left", embedding_json(r.left)},
              {"right", embedding_json(r.right)},
              {"color", r.color}});
    return;
  }

  FinderResult r;
  if (strategy == "oracle") {
    const bool type_mono = target == "chains" || target == "msubsets";
    auto fn = [&c, &target](const std::vector<Path>& sub) {
      return family_color(c, target, sub);
    };
    r = oracle_best_fn(host, c.arity(), fn, type_mono);
  } else if (target == "pairs-comparable") {
    r = find_comparable_pairs(host, subset_fn(c), k);
  } else if (target == "pairs-incomparable") {
    r = find_incomparable_pairs(host, subset_fn(c), k);
  } else if (target == "chains") {
    r = find_chains(host, subset_fn(c), c.arity(), k);
  } else if (target == "msubsets") {
    r = find_msubsets(host, subset_fn(c), c.arity(), k);
  } else {
    throw std::runtime_error("unknown find target: " + target);
  }
  emit(finder_result_json(r));
}

// ---- bounds ----------------------------------------------------------------

void cmd_bounds(const std::string& family, const std::string& form, int d,
                int m, int k, const std::string& n) {
  TowerValue v = TowerValue::from_exact(0);
  if (family == "pairs") {
    if (form == "comparable") v = bound_left_right(d, k);
    else if (form == "incomparable") v = bound_incomparable(d, k);
    else if (form == "all-simple") v = bound_all_pairs_simple(d, k);
    else v = bound_all_pairs(d, k);
  } else if (family == "chains") {
    v = form == "single-type" ? bound_chains_single_type(m, d, k)
                              : bound_chains_closed(m, d, k);
  } else if (family == "chains-recursive") {
    v = bound_chains_recursive(m, d, k);
  } else if (family == "msubsets") {
    v = bound_msubsets_envelope(m, d, k);
  } else if (family == "alpha") {
    v = alpha(d, k);
  } else if (family == "subtree-count") {
    v = subtree_count_bound(std::stoi(n), d);
  } else if (family == "privacy") {
    v = privacy_depth_guarantee(BigInt(n), m);
  } else {
    throw std::runtime_error("unknown bound family: " + family);
  }
  json j = json::parse(v.to_json());
  j["schema_version"] = 1;
  emit(j);
}

// ---- privacy ---------------------------------------------------------------

void cmd_privacy_reduce(int depth, std::vector<int> points,
                        const std::string& learner_name, int trials,
                        std::uint64_t seed) {
  const Learner a = load_learner(learner_name);
  IppInstance inst(depth, std::move(points));
  json outputs = json::array();
  long interior = 0, scan_reads = 0;
  for (int t = 0; t < trials; ++t) {
    auto r = reduce_from_ipp(a, inst, seed + t);
    outputs.push_back(r.output);
    interior += r.interior;
    scan_reads += r.scan_depth_reads;
  }
  emit(json{{"schema_version", 1},
            {"outputs", outputs},
            {"interior_rate", trials ? static_cast<double>(interior) / trials
                                     : 0.0},
            {"scan_depth_reads", scan_reads},
            {"window_length", window_length(depth)}});
}

void cmd_privacy_check_cb(int depth, int m, double gamma,
                          const std::string& learner_name) {
  auto check = is_comparison_based(load_learner(learner_name),
                                   whole_tree(depth), m, gamma);
  json j{{"schema_version", 1},
         {"comparison_based", check.comparison_based},
         {"max_deviation", check.max_deviation},
         {"gamma", gamma},
         {"table", table_json(check.table)}};
  if (check.counterexample) {
    const auto& ce = *check.counterexample;
    j["counterexample"] = json{
        {"type", type_bits_string(ce.type, m + 1)},
        {"location", ce.location},
        {"sample_low", sample_json(ce.sample_low)},
        {"x_low", ce.x_low},
        {"prob_low", ce.prob_low},
        {"sample_high", sample_json(ce.sample_high)},
        {"x_high", ce.x_high},
        {"prob_high", ce.prob_high}};
  }
  emit(j);
}

void cmd_privacy_build_coloring(int depth, int m,
                                const std::string& learner_name) {
  Coloring c = build_chain_coloring(load_learner(learner_name), depth, m);
  // Materialize: the functional backing is not reloadable from JSON.
  std::map<std::string, int> assignments;
  for_each_subset(whole_tree(depth), m + 2,
                  [&](const std::vector<Path>& sub) {
                    if (auto col = c.try_color(sub))
                      assignments[subset_key(sub)] = *col;
                    return true;
                  });
  Coloring table = Coloring::from_table(depth, m + 2, c.num_colors(),
                                        Scope::AllSubsets,
                                        std::move(assignments));
  emit(json::parse(table.to_json()));
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& embedding_path,
               const std::string& coloring_path,
               const std::string& predicate) {
  Coloring c = load_coloring(coloring_path);
  Embedding e = embedding_from_json(json::parse(slurp(embedding_path)));
  std::string reason;
  if (!validate_embedding(e, c.host_depth(), &reason))
    throw std::runtime_error("bad embedding: " + reason);
  std::optional<Violation> v = predicate == "type-monochromatic"
                                   ? check_type_monochromatic(e, c)
                                   : check_monochromatic(e, c);
  json j{{"schema_version", 1}, {"predicate", predicate}, {"pass", !v}};
  if (v) {
    j["violation"] = json{{"subset_a", v->subset_a},
                          {"subset_b", v->subset_b},
                          {"what", v->what}};
  }
  emit(j);
  return v ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey-on-trees toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // lets the global --output appear after a subcommand
  app.add_option("--output", g_output_path, "Write JSON here (else stdout)");

  int m = 1, depth = 3, d = 1, k = 2, trials = 1;
  double gamma = 0.01;
  std::uint64_t seed = 0;
  std::string name, params = "{}", coloring_path, embedding_path;
  std::string target, strategy = "constructive", family, form = "all";
  std::string learner = "leftmost", predicate = "monochromatic", n = "0";
  std::vector<int> budgets, points;

  auto* types = app.add_subcommand("types", "Subset-type calculus");
  auto* types_count = types->add_subcommand("count", "Number of m-types");
  types_count->add_option("--m", m)->required();
  auto* types_enum = types->add_subcommand("enumerate", "List m-types");
  types_enum->add_option("--m", m)->required();

  auto* colorings = app.add_subcommand("colorings", "Coloring files");
  auto* col_gen = colorings->add_subcommand("generate", "Named generator");
  col_gen->add_option("--name", name)->required();
  col_gen->add_option("--depth", depth)->required();
  col_gen->add_option("--params", params, "Generator parameters (JSON)");
  col_gen->add_option("--seed", seed);
  auto* col_inspect = colorings->add_subcommand("inspect", "Summarize");
  col_inspect->add_option("--coloring", coloring_path)->required();

  auto* php = app.add_subcommand("php", "Pigeonhole for trees");
  php->add_option("--coloring", coloring_path)->required();
  php->add_option("--budgets", budgets, "Per-color depth budgets")
      ->required()
      ->delimiter(',');

  auto* find = app.add_subcommand("find", "Monochromatic subtree finders");
  find->add_option("--coloring", coloring_path)->required();
  find->add_option("--target", target)
      ->required()
      ->check(CLI::IsMember({"pairs-comparable", "pairs-incomparable",
                             "chains", "msubsets", "bipartite"}));
  find->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"constructive", "oracle"}));

  auto* bounds = app.add_subcommand("bounds", "Depth-guarantee arithmetic");
  bounds->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"pairs", "chains", "chains-recursive",
                             "msubsets", "alpha", "subtree-count",
                             "privacy"}));
  bounds->add_option("--form", form,
                     "pairs: comparable|incomparable|all|all-simple; "
                     "chains: closed|single-type");
  bounds->add_option("--d", d);
  bounds->add_option("--m", m);
  bounds->add_option("--k", k);
  bounds->add_option("--n", n, "Host depth (decimal, may be huge)");

  auto* privacy = app.add_subcommand("privacy", "Learner lab");
  auto* reduce = privacy->add_subcommand("reduce", "Interior-point reduction");
  reduce->add_option("--depth", depth)->required();
  reduce->add_option("--points", points)->required()->delimiter(',');
  reduce->add_option("--learner", learner, "leftmost or table:<file>");
  reduce->add_option("--trials", trials);
  reduce->add_option("--seed", seed);
  auto* check_cb = privacy->add_subcommand("check-cb",
                                           "Comparison-based check");
  check_cb->add_option("--depth", depth)->required();
  check_cb->add_option("--m", m)->required();
  check_cb->add_option("--gamma", gamma);
  check_cb->add_option("--learner", learner);
  auto* build_col = privacy->add_subcommand("build-coloring",
                                            "Prediction-vector coloring");
  build_col->add_option("--depth", depth)->required();
  build_col->add_option("--m", m)->required();
  build_col->add_option("--learner", learner);

  auto* verify = app.add_subcommand("verify", "Re-check a witness");
  verify->add_option("--embedding", embedding_path)->required();
  verify->add_option("--coloring", coloring_path)->required();
  verify->add_option("--predicate", predicate)
      ->check(CLI::IsMember({"monochromatic", "type-monochromatic"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (types_count->parsed()) cmd_types_count(m);
    else if (types_enum->parsed()) cmd_types_enumerate(m);
    else if (col_gen->parsed()) cmd_colorings_generate(name, depth, params, seed);
    else if (col_inspect->parsed()) cmd_colorings_inspect(coloring_path);
    else if (php->parsed()) cmd_php(coloring_path, budgets);
    else if (find->parsed()) cmd_find(coloring_path, target, strategy);
    else if (bounds->parsed()) cmd_bounds(family, form, d, m, k, n);
    else if (reduce->parsed())
      cmd_privacy_reduce(depth, points, learner, trials, seed);
    else if (check_cb->parsed()) cmd_privacy_check_cb(depth, m, gamma, learner);
    else if (build_col->parsed())
      cmd_privacy_build_coloring(depth, m, learner);
    else if (verify->parsed())
      return cmd_verify(embedding_path, coloring_path, predicate);
    else
      throw std::runtime_error("missing subcommand");
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
