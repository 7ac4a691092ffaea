#include "ramsey/tree.hpp"

#include <algorithm>

namespace ramsey {

bool is_ancestor(const Path& a, const Path& b) {
  return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
}

Relation relation(const Path& a, const Path& b) {
  if (a == b) return Relation::Equal;
  if (is_ancestor(b, a))
    return a[b.size()] == '0' ? Relation::LeftDescendant
                              : Relation::RightDescendant;
  if (is_ancestor(a, b))
    return b[a.size()] == '0' ? Relation::LeftAncestor
                              : Relation::RightAncestor;
  return Relation::Incomparable;
}

Path lca(const Path& a, const Path& b) {
  std::size_t i = 0, n = std::min(a.size(), b.size());
  while (i < n && a[i] == b[i]) ++i;
  return a.substr(0, i);
}

bool path_less(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Path> sorted_paths(std::vector<Path> ps) {
  std::sort(ps.begin(), ps.end(), path_less);
  return ps;
}

std::string subset_key(const std::vector<Path>& subset) {
  auto s = sorted_paths(subset);
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += '|';
    out += s[i];
  }
  return out;
}

std::size_t heap_size(int depth) {
  return (std::size_t{1} << (depth + 1)) - 1;
}

Embedding whole_tree(int n) {
  Embedding e;
  e.depth = n;
  e.level_aligned = true;
  e.vertices.reserve(heap_size(n));
  e.vertices.emplace_back();  // root
  for (std::size_t i = 0; e.vertices.size() < heap_size(n); ++i) {
    e.vertices.push_back(e.vertices[i] + '0');
    e.vertices.push_back(e.vertices[i] + '1');
  }
  return e;
}

bool validate_embedding(const Embedding& e, int host_depth,
                        std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (e.depth < 0) return fail("negative depth");
  if (e.vertices.size() != heap_size(e.depth))
    return fail("vertex count does not match depth");
  for (const Path& p : e.vertices) {
    if (depth_of(p) > host_depth) return fail("vertex below host depth");
    if (p.find_first_not_of("01") != Path::npos)
      return fail("vertex path has characters outside {0,1}");
  }
  std::size_t internal = heap_size(e.depth) / 2;  // indices with children
  for (std::size_t i = 0; i < internal; ++i) {
    Relation l = relation(e.vertices[2 * i + 1], e.vertices[i]);
    Relation r = relation(e.vertices[2 * i + 2], e.vertices[i]);
    if (l != Relation::LeftDescendant)
      return fail("left child is not a strict left-descendant");
    if (r != Relation::RightDescendant)
      return fail("right child is not a strict right-descendant");
  }
  if (e.level_aligned) {
    std::size_t idx = 0;
    for (int lvl = 0; lvl <= e.depth; ++lvl) {
      std::size_t count = std::size_t{1} << lvl;
      int d0 = depth_of(e.vertices[idx]);
      for (std::size_t j = 0; j < count; ++j)
        if (depth_of(e.vertices[idx + j]) != d0)
          return fail("level not aligned to a single host depth");
      idx += count;
    }
  }
  return true;
}

Embedding subtree_at(const Embedding& e, std::size_t heap_index) {
  int level = 0;
  for (std::size_t i = heap_index; i > 0; i = (i - 1) / 2) ++level;
  Embedding out;
  out.depth = e.depth - level;
  out.level_aligned = e.level_aligned;
  std::vector<std::size_t> frontier{heap_index};
  for (int lvl = 0; lvl <= out.depth; ++lvl) {
    std::vector<std::size_t> next;
    for (std::size_t i : frontier) {
      out.vertices.push_back(e.vertices[i]);
      next.push_back(2 * i + 1);
      next.push_back(2 * i + 2);
    }
    frontier = std::move(next);
  }
  return out;
}

Embedding truncate(const Embedding& e, int new_depth) {
  Embedding out;
  out.depth = new_depth;
  out.level_aligned = e.level_aligned;
  out.vertices.assign(e.vertices.begin(),
                      e.vertices.begin() + heap_size(new_depth));
  return out;
}

Embedding join_embeddings(const Path& root, const Embedding& left,
                          const Embedding& right) {
  if (left.depth != right.depth)
    throw std::invalid_argument("join_embeddings: depth mismatch");
  Embedding out;
  out.depth = left.depth + 1;
  out.vertices.reserve(heap_size(out.depth));
  out.vertices.push_back(root);
  std::size_t lo = 0;
  for (int lvl = 0; lvl <= left.depth; ++lvl) {
    std::size_t count = std::size_t{1} << lvl;
    for (std::size_t j = 0; j < count; ++j)
      out.vertices.push_back(left.vertices[lo + j]);
    for (std::size_t j = 0; j < count; ++j)
      out.vertices.push_back(right.vertices[lo + j]);
    lo += count;
  }
  return out;
}

namespace {

// Indices (into host.vertices) of strict descendants of heap node i on the
// given side (side 0 = left child subtree, 1 = right child subtree).
std::vector<std::size_t> side_descendants(const Embedding& host,
                                          std::size_t i, int side) {
  std::vector<std::size_t> out;
  std::size_t child = 2 * i + 1 + static_cast<std::size_t>(side);
  if (child >= host.vertices.size()) return out;
  std::vector<std::size_t> frontier{child};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t j : frontier) {
      out.push_back(j);
      if (2 * j + 2 < host.vertices.size()) {
        next.push_back(2 * j + 1);
        next.push_back(2 * j + 2);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

struct SubtreeEnum {
  const Embedding& host;
  int d;
  bool aligned;

  // Count of depth-rem subtrees rooted at heap index i (level-aligned is
  // handled by counting per (index, schedule) via direct recursion below).
  std::uint64_t count_rooted(std::size_t i, int rem, std::uint64_t cap) {
    if (rem == 0) return 1;
    std::uint64_t ls = 0, rs = 0;
    for (std::size_t a : side_descendants(host, i, 0)) {
      ls += count_rooted(a, rem - 1, cap);
      if (cap && ls > cap) return cap + 1;
    }
    for (std::size_t b : side_descendants(host, i, 1)) {
      rs += count_rooted(b, rem - 1, cap);
      if (cap && rs > cap) return cap + 1;
    }
    if (cap && ls && rs && ls > (cap + 1) / rs + 1) return cap + 1;
    std::uint64_t prod = ls * rs;
    return (cap && prod > cap) ? cap + 1 : prod;
  }
};

// Recursive lex enumeration.  We build the heap-order sequence level by
// level: a partial state is the current frontier of heap indices; at each
// step we pick, for every frontier node in order, a (left, right) child
// pair, advancing in lex order of the resulting next-level sequence.  To
// emit results in true lex order of the full heap sequence we generate the
// whole next level before recursing.
struct LevelEnum {
  const Embedding& host;
  int d;
  bool aligned;
  const std::function<bool(const Embedding&)>& fn;
  std::vector<std::size_t> chosen;  // heap indices of all emitted levels

  bool emit() {
    Embedding e;
    e.depth = d;
    e.level_aligned = aligned;
    e.vertices.reserve(chosen.size());
    for (std::size_t i : chosen) e.vertices.push_back(host.vertices[i]);
    return fn(e);
  }

  // Fill children (an index list of length 2*frontier.size()) starting at
  // position pos, then recurse to the next level.
  bool fill(const std::vector<std::size_t>& frontier, int level,
            std::vector<std::size_t>& children, std::size_t pos) {
    if (pos == children.size()) {
      if (aligned) {
        int d0 = -1;
        for (std::size_t i : children) {
          int dd = depth_of(host.vertices[i]);
          if (d0 < 0) d0 = dd;
          if (dd != d0) return true;  // skip, keep enumerating siblings
        }
      }
      std::size_t mark = chosen.size();
      chosen.insert(chosen.end(), children.begin(), children.end());
      bool cont = descend(children, level + 1);
      chosen.resize(mark);
      return cont;
    }
    std::size_t parent = frontier[pos / 2];
    int side = static_cast<int>(pos % 2);
    auto cands = side_descendants(host, parent, side);
    std::sort(cands.begin(), cands.end(), [&](std::size_t a, std::size_t b) {
      return path_less(host.vertices[a], host.vertices[b]);
    });
    for (std::size_t c : cands) {
      children[pos] = c;
      if (!fill(frontier, level, children, pos + 1)) return false;
    }
    return true;
  }

  bool descend(const std::vector<std::size_t>& frontier, int level) {
    if (level > d) return emit();
    std::vector<std::size_t> children(2 * frontier.size());
    return fill(frontier, level, children, 0);
  }

  bool run() {
    std::vector<std::size_t> roots(host.vertices.size());
    for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = i;
    std::sort(roots.begin(), roots.end(), [&](std::size_t a, std::size_t b) {
      return path_less(host.vertices[a], host.vertices[b]);
    });
    for (std::size_t r : roots) {
      chosen.assign(1, r);
      if (!descend({r}, 1)) return false;
    }
    return true;
  }
};

}  // namespace

bool for_each_subtree(const Embedding& host, int d, bool level_aligned,
                      const std::function<bool(const Embedding&)>& fn) {
  if (d > host.depth) return true;
  LevelEnum en{host, d, level_aligned, fn, {}};
  return en.run();
}

std::uint64_t count_subtrees(const Embedding& host, int d, bool level_aligned,
                             std::uint64_t limit) {
  if (d > host.depth) return 0;
  if (!level_aligned) {
    SubtreeEnum se{host, d, level_aligned};
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < host.vertices.size(); ++i) {
      total += se.count_rooted(i, d, limit);
      if (limit && total > limit) return limit + 1;
    }
    return total;
  }
  // Level-aligned counting shares the enumerator (schedules constrain the
  // product structure, so the unaligned DP does not apply).
  std::uint64_t total = 0;
  for_each_subtree(host, d, true, [&](const Embedding&) {
    ++total;
    return !(limit && total > limit);
  });
  return total;
}

std::vector<Embedding> enumerate_subtrees(const Embedding& host, int d,
                                          bool level_aligned,
                                          std::uint64_t limit) {
  if (limit && count_subtrees(host, d, level_aligned, limit) > limit)
    throw std::runtime_error("enumerate_subtrees: count exceeds limit");
  std::vector<Embedding> out;
  for_each_subtree(host, d, level_aligned, [&](const Embedding& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

bool for_each_subset(const Embedding& host, int m,
                     const std::function<bool(const std::vector<Path>&)>& fn) {
  std::vector<Path> verts = sorted_paths(host.vertices);
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (m < 0 || static_cast<std::size_t>(m) > verts.size()) return true;
  std::vector<std::size_t> idx(m);
  std::vector<Path> subset(m);
  std::function<bool(int, std::size_t)> rec = [&](int pos, std::size_t start) {
    if (pos == m) return fn(subset);
    for (std::size_t i = start; i + (m - pos) <= verts.size(); ++i) {
      subset[pos] = verts[i];
      if (!rec(pos + 1, i + 1)) return false;
    }
    return true;
  };
  return rec(0, 0);
}

}  // namespace ramsey
