// Python bindings for the main library operations: types, colorings, the
// pigeonhole, the subtree finders and oracles, bound arithmetic, and the
// privacy lab.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ramsey/bounds.hpp"
#include "ramsey/coloring.hpp"
#include "ramsey/finders.hpp"
#include "ramsey/pigeonhole.hpp"
#include "ramsey/privacy.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/types.hpp"

namespace py = pybind11;
using namespace ramsey;

namespace {

py::object violation_to_py(const std::optional<Violation>& v) {
  if (!v) return py::none();
  py::dict d;
  d["subset_a"] = v->subset_a;
  d["subset_b"] = v->subset_b;
  d["what"] = v->what;
  return d;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::LeftDescendant: return "left-descendant";
    case Relation::RightDescendant: return "right-descendant";
    case Relation::LeftAncestor: return "left-ancestor";
    case Relation::RightAncestor: return "right-ancestor";
    case Relation::Incomparable: return "incomparable";
    case Relation::Equal: return "equal";
  }
  return "?";
}

}  // namespace

PYBIND11_MODULE(_ramsey, mod) {
  mod.doc() = "Ramsey theorems for binary trees: finders, oracles, bounds, "
              "and the comparison-based learner lab";

  // ---- tree ----------------------------------------------------------------
  py::class_<Embedding>(mod, "Embedding")
      .def(py::init([](int depth, bool aligned, std::vector<Path> vs) {
             Embedding e;
             e.depth = depth;
             e.level_aligned = aligned;
             e.vertices = std::move(vs);
             return e;
           }),
           py::arg("depth"), py::arg("level_aligned"), py::arg("vertices"))
      .def_readonly("depth", &Embedding::depth)
      .def_readonly("level_aligned", &Embedding::level_aligned)
      .def_readonly("vertices", &Embedding::vertices)
      .def("__repr__", [](const Embedding& e) {
        return "Embedding(depth=" + std::to_string(e.depth) + ", " +
               std::to_string(e.vertices.size()) + " vertices)";
      });

  mod.def("whole_tree", &whole_tree, py::arg("depth"));
  mod.def("validate_embedding",
          [](const Embedding& e, int host_depth) {
            std::string reason;
            const bool ok = validate_embedding(e, host_depth, &reason);
            return py::make_tuple(ok, reason);
          },
          py::arg("embedding"), py::arg("host_depth"));
  mod.def("relation",
          [](const Path& a, const Path& b) {
            return std::string(relation_name(relation(a, b)));
          },
          py::arg("a"), py::arg("b"));
  mod.def("lca", &lca, py::arg("a"), py::arg("b"));
  mod.def("subtree_at", &subtree_at, py::arg("embedding"),
          py::arg("heap_index"));
  mod.def("count_subtrees", &count_subtrees, py::arg("host"), py::arg("d"),
          py::arg("level_aligned"), py::arg("limit") = 0);

  // ---- types ---------------------------------------------------------------
  mod.def("tau", [](int m) { return py::cast(tau(m).str()); }, py::arg("m"),
          "Number of m-subset types, as a decimal string");
  mod.def("enumerate_types", [](int m) {
    std::vector<std::string> out;
    for (const auto& t : enumerate_types(m)) out.push_back(t.canonical);
    return out;
  });
  mod.def("subset_type",
          [](const std::vector<Path>& s) { return subset_type(s).canonical; });
  mod.def("is_chain", &is_chain);
  mod.def("chain_type_bits", [](const std::vector<Path>& chain) {
    return chain_type(sorted_paths(chain)).bits;
  });

  // ---- colorings -----------------------------------------------------------
  py::class_<Coloring>(mod, "Coloring")
      .def_static("generate", &make_generator_coloring, py::arg("name"),
                  py::arg("host_depth"), py::arg("params_json") = "{}",
                  py::arg("seed") = 0)
      .def_static("from_json", &Coloring::from_json)
      .def("to_json", &Coloring::to_json)
      .def("color_of", &Coloring::color_of)
      .def("try_color", &Coloring::try_color)
      .def_property_readonly("host_depth", &Coloring::host_depth)
      .def_property_readonly("arity", &Coloring::arity)
      .def_property_readonly("num_colors", &Coloring::num_colors);

  mod.def("check_monochromatic",
          [](const Embedding& e, const Coloring& c) {
            return violation_to_py(check_monochromatic(e, c));
          });
  mod.def("check_type_monochromatic",
          [](const Embedding& e, const Coloring& c) {
            return violation_to_py(check_type_monochromatic(e, c));
          });

  // ---- pigeonhole ----------------------------------------------------------
  py::class_<PigeonholeResult>(mod, "PigeonholeResult")
      .def_readonly("color", &PigeonholeResult::color)
      .def_readonly("subtree", &PigeonholeResult::subtree);
  mod.def("php_find", &php_find, py::arg("host"), py::arg("chi"),
          py::arg("budgets"));
  mod.def("php_find_uniform", &php_find_uniform, py::arg("host"),
          py::arg("chi"), py::arg("k"));

  // ---- finders -------------------------------------------------------------
  py::class_<FinderResult>(mod, "FinderResult")
      .def_readonly("subtree", &FinderResult::subtree)
      .def_readonly("color", &FinderResult::color)
      .def_readonly("type_colors", &FinderResult::type_colors);
  py::class_<BipartiteResult>(mod, "BipartiteResult")
      .def_readonly("left", &BipartiteResult::left)
      .def_readonly("right", &BipartiteResult::right)
      .def_readonly("color", &BipartiteResult::color);

  mod.def("find_comparable_pairs", &find_comparable_pairs, py::arg("host"),
          py::arg("chi"), py::arg("k"), py::arg("side") = 0);
  mod.def("find_incomparable_pairs", &find_incomparable_pairs,
          py::arg("host"), py::arg("chi"), py::arg("k"));
  mod.def("find_chains", &find_chains, py::arg("host"), py::arg("chi"),
          py::arg("m"), py::arg("k"));
  mod.def("find_msubsets", &find_msubsets, py::arg("host"), py::arg("chi"),
          py::arg("m"), py::arg("k"));
  mod.def("find_bipartite", &find_bipartite, py::arg("left"),
          py::arg("right"), py::arg("chi"), py::arg("k"),
          py::arg("oracle_limit") = 0);
  mod.def("oracle_best",
          [](const Embedding& host, const Coloring& c, bool type_mono,
             int max_depth) {
            OracleOptions opt;
            opt.max_depth = max_depth;
            return oracle_best(host, c, type_mono, opt);
          },
          py::arg("host"), py::arg("coloring"), py::arg("type_mono"),
          py::arg("max_depth") = -1);
  mod.def("comparable_pairs_guarantee", &comparable_pairs_guarantee,
          py::arg("n"), py::arg("k"));

  // ---- bounds --------------------------------------------------------------
  py::class_<TowerValue>(mod, "TowerValue")
      .def("to_json", &TowerValue::to_json)
      .def("__repr__", &TowerValue::to_json);
  mod.def("tv_leq", &tv_leq);
  mod.def("bound_left_right", &bound_left_right);
  mod.def("bound_incomparable", &bound_incomparable);
  mod.def("bound_all_pairs", &bound_all_pairs);
  mod.def("bound_all_pairs_simple", &bound_all_pairs_simple);
  mod.def("bound_chains_closed", &bound_chains_closed);
  mod.def("bound_chains_recursive", &bound_chains_recursive);
  mod.def("bound_msubsets_envelope", &bound_msubsets_envelope);
  mod.def("subtree_count_bound", &subtree_count_bound);
  mod.def("privacy_depth_guarantee",
          [](const std::string& n, int m) {
            return privacy_depth_guarantee(BigInt(n), m);
          },
          py::arg("n"), py::arg("m"));

  // ---- privacy lab ---------------------------------------------------------
  py::class_<Learner>(mod, "Learner");
  mod.def("leftmost_branch_learner", &leftmost_branch_learner);
  mod.def("table_learner_from_json", [](const std::string& txt) {
    return table_learner(ComparisonTable::from_json(txt));
  });
  mod.def("eval_prob",
          [](const Learner& a, const std::vector<std::pair<Path, int>>& s,
             const Path& x) {
            RealizableSample rs;
            for (const auto& [p, y] : s) rs.push_back(LabeledPoint{p, y});
            return eval_prob(a, rs, x);
          },
          py::arg("learner"), py::arg("sample"), py::arg("x"));
  mod.def("is_comparison_based",
          [](const Learner& a, const Embedding& emb, int m, double gamma) {
            auto c = is_comparison_based(a, emb, m, gamma);
            py::dict d;
            d["comparison_based"] = c.comparison_based;
            d["max_deviation"] = c.max_deviation;
            d["table_json"] = c.table.to_json();
            return d;
          },
          py::arg("learner"), py::arg("embedding"), py::arg("m"),
          py::arg("gamma"));
  mod.def("build_chain_coloring", &build_chain_coloring, py::arg("learner"),
          py::arg("host_depth"), py::arg("m"));
  mod.def("window_length", &window_length, py::arg("n"));
  mod.def("reduce_from_ipp",
          [](const Learner& a, int n, const std::vector<int>& depths,
             std::uint64_t seed) {
            IppInstance inst(n, depths);
            auto r = reduce_from_ipp(a, inst, seed);
            py::dict d;
            d["output"] = r.output;
            d["interior"] = r.interior;
            d["scan_depth_reads"] = r.scan_depth_reads;
            return d;
          },
          py::arg("learner"), py::arg("n"), py::arg("depths"),
          py::arg("seed"));
}
