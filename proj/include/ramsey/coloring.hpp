#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/tree.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

// What family of subsets a coloring assigns colors to.
enum class Scope {
  AllSubsets,    // every m-subset of the host
  SingleType,    // only m-subsets of one given type
  SingleChainType,  // only m-chains of one given chain type
  Vertices,      // 1-subsets (arity 1)
  CrossPairs,    // pairs (u, v) with u in a left part, v in a right part
};

struct OutOfScope : std::runtime_error {
  explicit OutOfScope(const std::string& what) : std::runtime_error(what) {}
};

// A coloring of m-subsets of the vertices of a depth-n host tree with
// colors {0, ..., k-1}.  Backed either by an extensional table or by a
// named deterministic generator (pure in (subset, seed), so colorings are
// reproducible and serializable without materializing the table).
class Coloring {
 public:
  using Fn = std::function<std::optional<int>(const std::vector<Path>&)>;

  static Coloring from_table(int host_depth, int arity, int num_colors,
                             Scope scope,
                             std::map<std::string, int> assignments,
                             std::string scope_detail = {});
  static Coloring from_function(int host_depth, int arity, int num_colors,
                                Scope scope, Fn fn,
                                std::string generator = "custom",
                                std::string params_json = "{}",
                                std::uint64_t seed = 0,
                                std::string scope_detail = {});

  // Color of an in-scope subset; throws OutOfScope otherwise.
  int color_of(const std::vector<Path>& subset) const;
  // nullopt if out of scope.
  std::optional<int> try_color(const std::vector<Path>& subset) const;
  bool in_scope(const std::vector<Path>& subset) const {
    return try_color(subset).has_value();
  }

  int host_depth() const { return host_depth_; }
  int arity() const { return arity_; }
  int num_colors() const { return num_colors_; }
  Scope scope() const { return scope_; }
  // Canonical type string / chain-type bits for the scoped variants.
  const std::string& scope_detail() const { return scope_detail_; }

  bool is_extensional() const { return table_.has_value(); }
  const std::map<std::string, int>& table() const { return *table_; }
  const std::string& generator() const { return generator_; }
  const std::string& params_json() const { return params_json_; }
  std::uint64_t seed() const { return seed_; }

  std::string to_json() const;                       // schema_version 1
  static Coloring from_json(const std::string& txt);

 private:
  Coloring() = default;
  int host_depth_ = 0, arity_ = 1, num_colors_ = 1;
  Scope scope_ = Scope::AllSubsets;
  std::string scope_detail_;
  std::optional<std::map<std::string, int>> table_;
  Fn fn_;
  std::string generator_ = "table", params_json_ = "{}";
  std::uint64_t seed_ = 0;
};

// --- Named generators -------------------------------------------------------

// Colors every m-subset by the canonical index of its type (k = tau(m)).
Coloring type_coloring(int host_depth, int m);

// Two-coloring of triplets: the two "chain of two plus a single on the
// other side" triplet types get red (0) when the single vertex hangs to the
// right of the chain and blue (1) when it hangs to the left.  All other
// triplet types are out of scope.  Every depth-2 subtree of a deep host
// contains both colors, so no depth-2 subtree is monochromatic.
Coloring skew_triplet_coloring(int host_depth);

// Four-coloring of pairs defeating monochromatic pair subtrees: comparable
// pairs are colored by descendant side (left 0, right 1); incomparable
// pairs by comparing host depths of the two sides below the meet (left
// deeper-or-equal 2, right deeper 3).
Coloring depth_pair_coloring(int host_depth);

// Coloring of m-subsets with 2^(m-1) + m! colors defeating monochromatic
// subtrees for every m: chains by chain-type index; antichains by the
// permutation induced by host depths on the left-to-right order (index
// 2^(m-1) + lexicographic rank of the permutation, ties in depth broken by
// left-to-right position).  Mixed subsets are out of scope.
Coloring chain_antichain_coloring(int host_depth, int m);

// Seeded pseudo-random k-coloring of all m-subsets (pure hash of the
// canonical subset key and the seed).
Coloring random_coloring(int host_depth, int m, int k, std::uint64_t seed);
// As above, but only subsets of the given type are in scope.
Coloring random_type_coloring(int host_depth, const SubsetType& type, int k,
                              std::uint64_t seed);
// Seeded pseudo-random k-coloring of vertices (arity 1).
Coloring random_vertex_coloring(int host_depth, int k, std::uint64_t seed);
// Pair coloring chi({u,v}) = chi*(lca(u,v)) for a seeded random vertex
// coloring chi*; only incomparable pairs are in scope.
Coloring meet_planted_coloring(int host_depth, int k, std::uint64_t seed);

Coloring make_generator_coloring(const std::string& name, int host_depth,
                                 const std::string& params_json,
                                 std::uint64_t seed);

// --- Verification -----------------------------------------------------------

struct Violation {
  std::vector<Path> subset_a;
  std::vector<Path> subset_b;  // empty for monochromatic violations
  std::string what;
};

// Checks that all in-scope m-subsets inside the embedding have one color.
std::optional<Violation> check_monochromatic(const Embedding& e,
                                             const Coloring& c);
// Checks that color depends only on the type within the embedding: any two
// in-scope equal-type subsets have equal colors.
std::optional<Violation> check_type_monochromatic(const Embedding& e,
                                                  const Coloring& c);

// Stable 64-bit hash used by the seeded generators.
std::uint64_t mix_hash(const std::string& key, std::uint64_t seed);

}  // namespace ramsey
