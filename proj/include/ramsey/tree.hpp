#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramsey {

// A vertex of the infinite binary tree, written as its root path over {0,1}.
// '0' = step to the left child, '1' = step to the right child.  The root is
// the empty string.  A complete host tree of depth n contains every path of
// length <= n.
using Path = std::string;

enum class Relation {
  LeftDescendant,   // first argument is a strict left-descendant of second
  RightDescendant,  // first argument is a strict right-descendant of second
  LeftAncestor,     // second is a strict left-descendant of first
  RightAncestor,    // second is a strict right-descendant of first
  Incomparable,
  Equal,
};

inline int depth_of(const Path& p) { return static_cast<int>(p.size()); }

bool is_ancestor(const Path& a, const Path& b);  // a == b counts as true
Relation relation(const Path& a, const Path& b);
Path lca(const Path& a, const Path& b);

// Canonical vertex order: by depth, then by bits.  Used wherever a subset of
// vertices needs a deterministic serialization.
bool path_less(const Path& a, const Path& b);
std::vector<Path> sorted_paths(std::vector<Path> ps);
std::string subset_key(const std::vector<Path>& subset);  // sorted, '|'-joined

// Heap-order embedding of a complete binary tree of the given depth into a
// host tree.  vertices[0] is the root, vertices[2i+1] / vertices[2i+2] are
// the left / right child images of vertices[i]; there are 2^(depth+1)-1
// entries.  Child images must be strict left/right-descendants of their
// parent image.  level_aligned additionally requires all vertices of the
// same heap level to sit at the same host depth.
struct Embedding {
  int depth = 0;
  bool level_aligned = false;
  std::vector<Path> vertices;

  std::size_t size() const { return vertices.size(); }
  const Path& root() const { return vertices[0]; }
};

// The identity embedding of the complete depth-n tree.
Embedding whole_tree(int n);

// True if e is a well-formed embedding whose vertices fit in a host of depth
// host_depth (and is level-aligned when it claims to be).  On failure,
// *reason (if given) receives a short description.
bool validate_embedding(const Embedding& e, int host_depth,
                        std::string* reason = nullptr);

// Number of heap vertices of a depth-d complete tree: 2^(d+1)-1.
std::size_t heap_size(int depth);

// The sub-embedding of depth (e.depth - level) rooted at heap index i.
Embedding subtree_at(const Embedding& e, std::size_t heap_index);

// Shrink an embedding to the given smaller depth (keep the top levels).
Embedding truncate(const Embedding& e, int new_depth);

// Join two embeddings of equal depth under a common root vertex (which must
// have the two roots as strict left/right-descendants for the result to
// validate).
Embedding join_embeddings(const Path& root, const Embedding& left,
                          const Embedding& right);

// Enumerate all depth-d subtree embeddings inside a host embedding, in
// lexicographic order of the heap-order vertex sequence.  The callback may
// return false to stop early.  Returns false iff stopped early.
bool for_each_subtree(const Embedding& host, int d, bool level_aligned,
                      const std::function<bool(const Embedding&)>& fn);

// Count without materializing (exact, may be large; saturates at limit+1
// when limit > 0).
std::uint64_t count_subtrees(const Embedding& host, int d, bool level_aligned,
                             std::uint64_t limit = 0);

// Convenience: collect and sort.  Throws if the count exceeds limit (>0).
std::vector<Embedding> enumerate_subtrees(const Embedding& host, int d,
                                          bool level_aligned,
                                          std::uint64_t limit = 0);

// Enumerate all m-element vertex subsets of a host embedding, each sorted in
// canonical order, themselves in lexicographic order.  Callback may stop.
bool for_each_subset(const Embedding& host, int m,
                     const std::function<bool(const std::vector<Path>&)>& fn);

}  // namespace ramsey
