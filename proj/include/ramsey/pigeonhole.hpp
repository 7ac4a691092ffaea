#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ramsey/tree.hpp"

namespace ramsey {

// Color function on host vertices (values in {0, ..., k-1}).
using VertexColorFn = std::function<int(const Path&)>;

// Per-color depth budgets a_1, ..., a_k.
using BudgetVector = std::vector<int>;

struct PigeonholeResult {
  int color = 0;
  Embedding subtree;  // monochromatic in color, depth >= budget[color]
};

// Constructive pigeonhole for trees: if the host embedding has depth
// n >= a_1 + ... + a_k, some color c admits a monochromatic (in the vertex
// coloring) subtree of depth a_c.  Deterministic: left branches are
// explored first and the returned embedding is the first witness found.
// When n exceeds the budget sum, the slack is added to the largest budget
// (first largest on ties), so deeper hosts yield deeper witnesses.
PigeonholeResult php_find(const Embedding& host, const VertexColorFn& chi,
                          const BudgetVector& budgets);

// Uniform budgets: depth >= floor(n / k) for hosts of depth n.
PigeonholeResult php_find_uniform(const Embedding& host,
                                  const VertexColorFn& chi, int k);

// Exhaustive search for the deepest level-aligned monochromatic subtree
// (any color).  Reference oracle for the level-aligned pigeonhole; no
// constructive routine is provided for it.
PigeonholeResult php_level_aligned_bruteforce(const Embedding& host,
                                              const VertexColorFn& chi,
                                              std::uint64_t limit = 0);

// True if every vertex of the embedding has the given color.
bool is_vertex_monochromatic(const Embedding& e, const VertexColorFn& chi,
                             int color);

}  // namespace ramsey
