#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/tree.hpp"

namespace ramsey {

using BigInt = boost::multiprecision::cpp_int;

// Closure of a vertex set under pairwise lowest common ancestors, returned
// in canonical order.
std::vector<Path> lca_closure(const std::vector<Path>& subset);

// The type of an m-subset A: the shape of the binary tree induced on the
// closure of A, with each closure-only vertex (a vertex added by taking
// LCAs, not in A itself) marked.  Canonically serialized in pre-order:
//   node  := mark '(' child ',' child ')'
//   mark  := 'A' (member of the subset) | '*' (closure-only)
//   child := node | '.'
// The left child of a node v is the sub-shape hanging off v's left side.
struct SubsetType {
  int m = 0;               // number of unmarked (subset) vertices
  std::string canonical;   // serialization above

  bool operator==(const SubsetType& o) const {
    return canonical == o.canonical;
  }
  bool operator<(const SubsetType& o) const {
    return canonical < o.canonical;
  }
};

SubsetType subset_type(const std::vector<Path>& subset);

// A chain type: for an m-chain v_1 < ... < v_m, the branching directions
// bits[i] = 0/1 according to whether v_{i+2} is a left or right descendant
// of v_{i+1}... i.e. bits[i] is the direction from v_{i+1} to v_{i+2}.
// There are 2^(m-1) chain types; index = bits read as a binary number,
// most significant bit first.
struct ChainType {
  int m = 0;
  std::vector<int> bits;  // length m-1

  int index() const {
    int v = 0;
    for (int b : bits) v = 2 * v + b;
    return v;
  }
  bool operator==(const ChainType& o) const { return bits == o.bits; }
};

// True if the subset is totally ordered by the ancestor relation.
bool is_chain(const std::vector<Path>& subset);
ChainType chain_type(const std::vector<Path>& chain);

// The subset type corresponding to a chain type (a path shape, no marks).
SubsetType chain_subset_type(const ChainType& t);
// True if a subset type is the type of a chain (path shape, no marks).
bool is_chain_shape(const SubsetType& t);

// Decomposition of a type at its root: whether the root is a closure-only
// (marked) branching point, and the sub-shapes hanging off each side.
struct TypeSplit {
  bool root_marked = false;
  std::optional<SubsetType> left, right;
};
TypeSplit split_type(const SubsetType& t);

// All types of m-subsets, sorted by canonical string.  The position of a
// type in this list is its canonical index.
const std::vector<SubsetType>& enumerate_types(int m);
int type_index(const SubsetType& t);

// Number of m-subset types: tau(1..4) = 1, 3, 13, 67.
BigInt tau(int m);
// Closed form: sum_{k=0}^{m-1} (m-k) * C(m+k-1, k) * 2^k / m  (exact).
BigInt tau_closed_form(int m);
// Upper bound 2^(3m-2) / sqrt(pi*(m-1)), for m >= 2.
double tau_upper_bound(int m);
// Lower bound m! + 2^(m-1) on the number of level-aligned m-subset types
// (types refined by the relative order of host depths).
BigInt tau_infinity_lower(int m);

}  // namespace ramsey
