#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/coloring.hpp"
#include "ramsey/pigeonhole.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

// Total color function over the subsets a finder cares about.
using SubsetColorFn = std::function<int(const std::vector<Path>&)>;
// Cross coloring of pairs (u from a left tree, v from a right tree).
using CrossColorFn = std::function<int(const Path&, const Path&)>;

struct FinderResult {
  Embedding subtree;
  // Set by the fully monochromatic finders.
  std::optional<int> color;
  // Set by the type-monochromatic finders: canonical type string -> color
  // for every type occurring inside the witness.
  std::map<std::string, int> type_colors;
};

struct BipartiteResult {
  Embedding left, right;
  int color = 0;
};

// Depth guarantee of find_comparable_pairs on a depth-n host with k colors.
int comparable_pairs_guarantee(int n, int k);

// Subtree in which every comparable pair on the given side (0: the deeper
// vertex is a left-descendant, 1: right-descendant) has one color.
// chi must be total on such pairs.
FinderResult find_comparable_pairs(const Embedding& host,
                                   const SubsetColorFn& chi, int k,
                                   int side = 0);

// Pair of equal-depth subtrees L' of left and R' of right such that every
// cross pair (u in L', v in R') has one color.
BipartiteResult find_bipartite(const Embedding& left, const Embedding& right,
                               const CrossColorFn& chi, int k,
                               std::uint64_t oracle_limit = 0);

// Subtree in which every incomparable pair has one color; the color of a
// pair is determined at its meet by the construction.
FinderResult find_incomparable_pairs(const Embedding& host,
                                     const SubsetColorFn& chi, int k);

// Subtree in which the color of every m-chain depends only on its chain
// type (type_colors keyed by the chain's canonical subset-type string).
FinderResult find_chains(const Embedding& host, const SubsetColorFn& chi,
                         int m, int k);

// Subtree in which the color of every m-subset depends only on its type.
FinderResult find_msubsets(const Embedding& host, const SubsetColorFn& chi,
                           int m, int k);

// --- Reference oracles ------------------------------------------------------

// Enumeration cap: explicit value, else the RAMSEY_ORACLE_LIMIT environment
// variable, else 10^7.  Exceeding it raises "oracle infeasible".
std::uint64_t oracle_limit_from_env();

struct OracleOptions {
  std::uint64_t limit = 0;  // 0: use oracle_limit_from_env()
  int max_depth = -1;       // -1: host depth
  bool level_aligned = false;
};

// Deepest subtree that is monochromatic (type_mono == false: one color for
// every in-scope subset) or type-monochromatic (color depends only on the
// type) for the coloring.  Scans depths top-down, lexicographically.
FinderResult oracle_best(const Embedding& host, const Coloring& chi,
                         bool type_mono, OracleOptions opt = {});

// As oracle_best, but restricted to a subset family given as a predicate +
// color function (used to cross-check the specialised finders).
FinderResult oracle_best_fn(
    const Embedding& host, int arity,
    const std::function<std::optional<int>(const std::vector<Path>&)>& chi,
    bool type_mono, OracleOptions opt = {});

// Deepest d admitting equal-depth subtrees with all cross pairs one color.
BipartiteResult oracle_bipartite_best(const Embedding& left,
                                      const Embedding& right,
                                      const CrossColorFn& chi,
                                      OracleOptions opt = {});

// --- Verification helpers ---------------------------------------------------

// True if every pair (u,v) in e with v a side-descendant of u has color c.
bool verify_comparable(const Embedding& e, const SubsetColorFn& chi, int side,
                       int c);
bool verify_incomparable(const Embedding& e, const SubsetColorFn& chi, int c);
bool verify_cross(const Embedding& l, const Embedding& r,
                  const CrossColorFn& chi, int c);
// Checks chains (chains_only) or all m-subsets against a type->color map;
// requires every occurring type to be present in the map.
bool verify_type_colors(const Embedding& e, const SubsetColorFn& chi, int m,
                        bool chains_only,
                        const std::map<std::string, int>& type_colors);

}  // namespace ramsey
