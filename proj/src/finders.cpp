#include "ramsey/finders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

namespace ramsey {

namespace {

std::vector<Path> sorted_union(std::vector<Path> a, const Path& extra) {
  a.push_back(extra);
  return sorted_paths(std::move(a));
}

std::string emb_key(const Embedding& e) {
  std::string k;
  for (const Path& p : e.vertices) {
    k += p;
    k += '|';
  }
  return k;
}

}  // namespace

// --- Comparable pairs -------------------------------------------------------

int comparable_pairs_guarantee(int n, int k) {
  if (n < 2) return 0;
  return static_cast<int>(std::floor(std::log2(double(n)) /
                                     (k * std::log2(2.0 * k))));
}

namespace {

// Builds the meta tree for one-sided comparable pairs: every vertex u gets
// a meta color chistar[u] such that all pairs {u, v} with v in u's
// side-descendant region of the meta tree have chi == chistar[u].
struct CompStar {
  const SubsetColorFn& chi;
  int k;
  int side;  // 0: left pairs, 1: right pairs
  std::map<Path, int> chistar;

  Embedding build(const Embedding& S) {
    if (S.depth == 0) {
      chistar[S.root()] = 0;  // no descendants on either side: vacuous
      return S;
    }
    const Path& r = S.root();
    Embedding mine = subtree_at(S, 1 + side);
    Embedding other = subtree_at(S, 2 - side);
    auto vcol = [&](const Path& v) { return chi(sorted_union({r}, v)); };
    PigeonholeResult ph = php_find_uniform(mine, vcol, k);
    chistar[r] = ph.color;
    Embedding s0 = build(ph.subtree);
    Embedding s1 = build(other);
    int d = std::min(s0.depth, s1.depth);
    s0 = truncate(s0, d);
    s1 = truncate(s1, d);
    return side == 0 ? join_embeddings(r, s0, s1)
                     : join_embeddings(r, s1, s0);
  }
};

}  // namespace

FinderResult find_comparable_pairs(const Embedding& host,
                                   const SubsetColorFn& chi, int k,
                                   int side) {
  CompStar ctx{chi, k, side, {}};
  Embedding meta = ctx.build(host);
  auto lookup = [&](const Path& v) { return ctx.chistar.at(v); };
  PigeonholeResult ph = php_find_uniform(meta, lookup, k);
  FinderResult out;
  out.subtree = ph.subtree;
  out.color = ph.color;
  return out;
}

bool verify_comparable(const Embedding& e, const SubsetColorFn& chi, int side,
                       int c) {
  Relation want =
      side == 0 ? Relation::LeftDescendant : Relation::RightDescendant;
  for (std::size_t i = 0; i < e.vertices.size(); ++i)
    for (std::size_t j = 0; j < e.vertices.size(); ++j)
      if (relation(e.vertices[j], e.vertices[i]) == want &&
          chi(sorted_union({e.vertices[i]}, e.vertices[j])) != c)
        return false;
  return true;
}

// --- Bipartite --------------------------------------------------------------

BipartiteResult find_bipartite(const Embedding& left, const Embedding& right,
                               const CrossColorFn& chi, int k,
                               std::uint64_t oracle_limit) {
  if (oracle_limit == 0) oracle_limit = oracle_limit_from_env();
  (void)k;
  // Deepest aligned monochromatic left-subtree depth achievable for every
  // right vertex r under the vertex coloring v -> chi(v, r).
  int dl = left.depth;
  std::set<Path> rset(right.vertices.begin(), right.vertices.end());
  for (const Path& r : rset) {
    auto vcol = [&](const Path& v) { return chi(v, r); };
    PigeonholeResult ph =
        php_level_aligned_bruteforce(left, vcol, oracle_limit);
    dl = std::min(dl, ph.subtree.depth);
  }
  // Meta color of r: the lexicographically first aligned monochromatic
  // depth-dl subtree for r, together with its color.
  std::map<Path, std::pair<std::string, int>> meta;
  std::map<Path, Embedding> witness;
  std::map<std::string, int> ids;
  for (const Path& r : rset) {
    auto vcol = [&](const Path& v) { return chi(v, r); };
    for_each_subtree(left, dl, true, [&](const Embedding& e) {
      int c = vcol(e.root());
      if (!is_vertex_monochromatic(e, vcol, c)) return true;
      meta[r] = {emb_key(e) + ":" + std::to_string(c), c};
      witness[r] = e;
      return false;
    });
    ids.emplace(meta.at(r).first, static_cast<int>(ids.size()));
  }
  auto metacol = [&](const Path& v) { return ids.at(meta.at(v).first); };
  PigeonholeResult ph = php_find_uniform(
      right, metacol, static_cast<int>(ids.size()));
  BipartiteResult out;
  out.right = ph.subtree;
  out.left = witness.at(ph.subtree.root());
  out.left.level_aligned = true;
  out.color = meta.at(ph.subtree.root()).second;
  int d = std::min(out.left.depth, out.right.depth);
  out.left = truncate(out.left, d);
  out.right = truncate(out.right, d);
  return out;
}

bool verify_cross(const Embedding& l, const Embedding& r,
                  const CrossColorFn& chi, int c) {
  for (const Path& u : l.vertices)
    for (const Path& v : r.vertices)
      if (chi(u, v) != c) return false;
  return true;
}

// --- Incomparable pairs -----------------------------------------------------

namespace {

struct IncompStar {
  const SubsetColorFn& chi;
  int k;
  std::map<Path, int> chistar;

  Embedding build(const Embedding& S) {
    if (S.depth == 0) {
      chistar[S.root()] = 0;
      return S;
    }
    const Path& r = S.root();
    auto cross = [&](const Path& u, const Path& v) {
      return chi(sorted_union({u}, v));
    };
    BipartiteResult bip =
        find_bipartite(subtree_at(S, 1), subtree_at(S, 2), cross, k);
    chistar[r] = bip.color;
    Embedding s0 = build(bip.left);
    Embedding s1 = build(bip.right);
    int d = std::min(s0.depth, s1.depth);
    return join_embeddings(r, truncate(s0, d), truncate(s1, d));
  }
};

}  // namespace

FinderResult find_incomparable_pairs(const Embedding& host,
                                     const SubsetColorFn& chi, int k) {
  IncompStar ctx{chi, k, {}};
  Embedding meta = ctx.build(host);
  auto lookup = [&](const Path& v) { return ctx.chistar.at(v); };
  PigeonholeResult ph = php_find_uniform(meta, lookup, k);
  FinderResult out;
  out.subtree = ph.subtree;
  out.color = ph.color;
  return out;
}

bool verify_incomparable(const Embedding& e, const SubsetColorFn& chi,
                         int c) {
  for (std::size_t i = 0; i < e.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < e.vertices.size(); ++j) {
      if (e.vertices[i] == e.vertices[j]) continue;
      if (relation(e.vertices[i], e.vertices[j]) != Relation::Incomparable)
        continue;
      if (chi(sorted_union({e.vertices[i]}, e.vertices[j])) != c)
        return false;
    }
  return true;
}

// --- Chains -----------------------------------------------------------------

namespace {

struct ChainNode {
  Path v;
  int child[2] = {-1, -1};
};

// Erdos-Rado style meta-tree builder: each placement of a child is
// pigeonholed so that all candidates below agree, as continuations of every
// (m-1)-chain through the current vertex, on the chain coloring.
struct ChainStar {
  const SubsetColorFn& chi;
  int m, k;
  std::vector<ChainNode> nodes;

  int build(const Embedding& region, std::vector<Path>& ancestors) {
    int idx = static_cast<int>(nodes.size());
    nodes.push_back({region.root(), {-1, -1}});
    if (region.depth == 0) return idx;
    const Path& u = region.root();
    // All (m-2)-subsets of the strict ancestors of u.
    std::vector<std::vector<Path>> asubsets;
    if (static_cast<int>(ancestors.size()) >= m - 2) {
      std::vector<int> pick(m - 2);
      std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == m - 2) {
          std::vector<Path> a;
          for (int i : pick) a.push_back(ancestors[i]);
          asubsets.push_back(std::move(a));
          return;
        }
        for (int i = start; i < static_cast<int>(ancestors.size()); ++i) {
          pick[pos] = i;
          rec(pos + 1, i + 1);
        }
      };
      rec(0, 0);
    }
    ancestors.push_back(u);
    for (int b = 0; b < 2; ++b) {
      Embedding child = subtree_at(region, 1 + b);
      if (!asubsets.empty()) {
        // Equivalence class of a candidate x: its chi-vector over all
        // chains A + {u, x} with A an (m-2)-subset of the ancestors.
        std::map<std::string, int> classes;
        auto classof = [&](const Path& x) {
          std::string key;
          for (const auto& a : asubsets) {
            std::vector<Path> chain = a;
            chain.push_back(u);
            chain.push_back(x);
            key += std::to_string(chi(sorted_paths(chain)));
            key += ',';
          }
          return key;
        };
        for (const Path& x : child.vertices)
          classes.emplace(classof(x), static_cast<int>(classes.size()));
        auto vcol = [&](const Path& x) { return classes.at(classof(x)); };
        PigeonholeResult ph = php_find_uniform(
            child, vcol, static_cast<int>(classes.size()));
        child = ph.subtree;
      }
      nodes[idx].child[b] = build(child, ancestors);
    }
    ancestors.pop_back();
    return idx;
  }

  int min_depth(int i) const {
    if (nodes[i].child[0] < 0) return 0;
    return 1 + std::min(min_depth(nodes[i].child[0]),
                        min_depth(nodes[i].child[1]));
  }

  Embedding assemble(int root, int depth) const {
    Embedding out;
    out.depth = depth;
    std::vector<int> frontier{root};
    for (int lvl = 0; lvl <= depth; ++lvl) {
      std::vector<int> next;
      for (int i : frontier) {
        out.vertices.push_back(nodes[i].v);
        next.push_back(nodes[i].child[0]);
        next.push_back(nodes[i].child[1]);
      }
      frontier = std::move(next);
    }
    return out;
  }
};

}  // namespace

FinderResult find_chains(const Embedding& host, const SubsetColorFn& chi,
                         int m, int k) {
  FinderResult out;
  if (m == 1) {
    auto vcol = [&](const Path& v) { return chi({v}); };
    PigeonholeResult ph = php_find_uniform(host, vcol, k);
    out.subtree = ph.subtree;
    out.color = ph.color;
    out.type_colors[chain_subset_type(ChainType{1, {}}).canonical] = ph.color;
    return out;
  }
  ChainStar star{chi, m, k, {}};
  std::vector<Path> ancestors;
  int root = star.build(host, ancestors);
  int t = star.min_depth(root);
  if (t < 1) {
    out.subtree = Embedding{0, false, {host.root()}};
    return out;
  }
  // Recurse one level shallower so every vertex keeps both meta children
  // available as representatives for the induced (m-1)-chain coloring.
  Embedding meta = star.assemble(root, t - 1);
  std::map<Path, std::array<Path, 2>> reps;
  for (const ChainNode& n : star.nodes)
    if (n.child[0] >= 0)
      reps[n.v] = {star.nodes[n.child[0]].v, star.nodes[n.child[1]].v};
  auto chistar = [&](const std::vector<Path>& c) {
    const Path& w = *std::max_element(
        c.begin(), c.end(),
        [](const Path& a, const Path& b) { return path_less(a, b); });
    const auto& r = reps.at(w);
    int c0 = chi(sorted_union(c, r[0]));
    int c1 = chi(sorted_union(c, r[1]));
    return c0 * k + c1;
  };
  FinderResult inner = find_chains(meta, chistar, m - 1, k * k);
  out.subtree = inner.subtree;
  // Decode: the color of an m-chain extending an (m-1)-chain downward in
  // direction b is the b-component of the inner pair color.
  for (int bits = 0; bits < (1 << (m - 2)); ++bits) {
    ChainType prev{m - 1, {}};
    for (int i = m - 3; i >= 0; --i) prev.bits.push_back((bits >> i) & 1);
    auto it = inner.type_colors.find(chain_subset_type(prev).canonical);
    if (it == inner.type_colors.end()) continue;
    for (int b = 0; b < 2; ++b) {
      ChainType full{m, prev.bits};
      full.bits.push_back(b);
      int c = (b == 0) ? it->second / k : it->second % k;
      out.type_colors[chain_subset_type(full).canonical] = c;
    }
  }
  return out;
}

// --- m-subsets --------------------------------------------------------------

namespace {

struct Msub {
  int k;

  // Subtree of S in which all tau-subsets share one color under chifn.
  Embedding mono(const Embedding& S, const SubsetType& tau,
                 const SubsetColorFn& chifn, int colors, int* color_out) {
    std::map<Path, int> local;
    Embedding T = local_tree(S, tau, chifn, colors, local);
    auto vcol = [&](const Path& v) {
      auto it = local.find(v);
      return it == local.end() ? 0 : it->second;
    };
    PigeonholeResult ph = php_find_uniform(T, vcol, colors);
    if (color_out) *color_out = ph.color;
    return ph.subtree;
  }

  // Subtree with the local property: for every vertex v, all tau-subsets
  // inside it whose meet is v share the color local[v].
  Embedding local_tree(const Embedding& S, const SubsetType& tau,
                       const SubsetColorFn& chifn, int colors,
                       std::map<Path, int>& local) {
    if (tau.m == 1) {
      for (const Path& v : S.vertices) local[v] = chifn({v});
      return S;
    }
    if (S.depth == 0) {
      local[S.root()] = 0;
      return S;
    }
    const Path& r = S.root();
    TypeSplit split = split_type(tau);
    Embedding t1 = subtree_at(S, 1), t2 = subtree_at(S, 2);
    int c_r = 0;
    if (split.left && split.right) {
      auto cross = [&](const std::vector<Path>& a1,
                       const std::vector<Path>& a2) {
        std::vector<Path> all = a1;
        all.insert(all.end(), a2.begin(), a2.end());
        if (!split.root_marked) all.push_back(r);
        return chifn(sorted_paths(std::move(all)));
      };
      both(t1, t2, *split.left, *split.right, cross, colors, &c_r);
      // both() updates t1 and t2 in place to the cross-monochromatic pair.
    } else if (split.left || split.right) {
      const SubsetType& inner = split.left ? *split.left : *split.right;
      Embedding& side = split.left ? t1 : t2;
      auto chi1 = [&](const std::vector<Path>& a) {
        return chifn(sorted_union(a, r));
      };
      side = mono(side, inner, chi1, colors, &c_r);
    }
    std::map<Path, int> l1, l2;
    Embedding f1 = local_tree(t1, tau, chifn, colors, l1);
    Embedding f2 = local_tree(t2, tau, chifn, colors, l2);
    local.insert(l1.begin(), l1.end());
    local.insert(l2.begin(), l2.end());
    local[r] = c_r;
    int d = std::min(f1.depth, f2.depth);
    return join_embeddings(r, truncate(f1, d), truncate(f2, d));
  }

  // Shrinks t1, t2 so that every pair (A1 of type tau1 in t1, A2 of type
  // tau2 in t2) has cross color *color_out.
  void both(Embedding& t1, Embedding& t2, const SubsetType& tau1,
            const SubsetType& tau2,
            const std::function<int(const std::vector<Path>&,
                                    const std::vector<Path>&)>& cross,
            int colors, int* color_out) {
    // Meta color of A1: the monochromatic witness (subtree, color) that the
    // induced coloring chi_{A1} produces on t2.
    std::map<std::string, std::pair<Embedding, int>> witness;
    std::map<std::string, int> metaof;  // subset key -> meta id
    std::map<std::string, int> ids;     // witness key -> meta id
    bool any = false;
    for_each_subset(t1, tau1.m, [&](const std::vector<Path>& a1) {
      if (!(subset_type(a1) == tau1)) return true;
      any = true;
      auto chi_a1 = [&](const std::vector<Path>& a2) { return cross(a1, a2); };
      int c = 0;
      Embedding w = mono(t2, tau2, chi_a1, colors, &c);
      std::string wkey = emb_key(w) + ":" + std::to_string(c);
      auto [it, fresh] = ids.emplace(wkey, static_cast<int>(ids.size()));
      if (fresh) witness.emplace(wkey, std::make_pair(w, c));
      metaof[subset_key(a1)] = it->second;
      return true;
    });
    if (!any) {
      *color_out = 0;
      return;  // vacuous: no tau1-subsets on the left
    }
    auto metafn = [&](const std::vector<Path>& a1) {
      return metaof.at(subset_key(a1));
    };
    int meta_id = 0;
    Embedding t1p = mono(t1, tau1, metafn, static_cast<int>(ids.size()),
                         &meta_id);
    for (const auto& [wkey, wc] : ids)
      if (wc == meta_id) {
        t2 = witness.at(wkey).first;
        *color_out = witness.at(wkey).second;
        break;
      }
    t1 = t1p;
  }
};

}  // namespace

FinderResult find_msubsets(const Embedding& host, const SubsetColorFn& chi,
                           int m, int k) {
  Msub ctx{k};
  Embedding S = host;
  for (const SubsetType& tau : enumerate_types(m)) {
    if (S.depth == 0) break;
    S = ctx.mono(S, tau, chi, k, nullptr);
  }
  FinderResult out;
  out.subtree = S;
  for_each_subset(S, m, [&](const std::vector<Path>& s) {
    std::string t = subset_type(s).canonical;
    int c = chi(s);
    auto [it, fresh] = out.type_colors.emplace(t, c);
    if (!fresh && it->second != c)
      throw std::logic_error("find_msubsets: witness not type-monochromatic");
    return true;
  });
  return out;
}

bool verify_type_colors(const Embedding& e, const SubsetColorFn& chi, int m,
                        bool chains_only,
                        const std::map<std::string, int>& type_colors) {
  bool ok = true;
  for_each_subset(e, m, [&](const std::vector<Path>& s) {
    if (chains_only && !is_chain(s)) return true;
    auto it = type_colors.find(subset_type(s).canonical);
    if (it == type_colors.end() || chi(s) != it->second) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

// --- Oracles ----------------------------------------------------------------

std::uint64_t oracle_limit_from_env() {
  if (const char* s = std::getenv("RAMSEY_ORACLE_LIMIT")) {
    std::uint64_t v = std::strtoull(s, nullptr, 10);
    if (v > 0) return v;
  }
  return 10000000ull;
}

FinderResult oracle_best_fn(
    const Embedding& host, int arity,
    const std::function<std::optional<int>(const std::vector<Path>&)>& chi,
    bool type_mono, OracleOptions opt) {
  std::uint64_t limit = opt.limit ? opt.limit : oracle_limit_from_env();
  std::uint64_t seen = 0;
  int maxd = opt.max_depth < 0 ? host.depth
                               : std::min(opt.max_depth, host.depth);
  for (int d = maxd; d >= 0; --d) {
    FinderResult out;
    bool found = false;
    for_each_subtree(host, d, opt.level_aligned, [&](const Embedding& e) {
      if (++seen > limit)
        throw std::runtime_error("oracle infeasible: enumeration limit hit");
      std::map<std::string, int> tc;
      std::optional<int> mono_color;
      bool ok = true;
      for_each_subset(e, arity, [&](const std::vector<Path>& s) {
        auto c = chi(s);
        if (!c) return true;
        if (type_mono) {
          auto [it, fresh] = tc.emplace(subset_type(s).canonical, *c);
          if (!fresh && it->second != *c) ok = false;
        } else {
          if (mono_color && *mono_color != *c) ok = false;
          mono_color = *c;
          tc.emplace(subset_type(s).canonical, *c);
        }
        return ok;
      });
      if (!ok) return true;
      out.subtree = e;
      out.color = mono_color;
      out.type_colors = std::move(tc);
      found = true;
      return false;
    });
    if (found) return out;
  }
  throw std::logic_error("oracle_best: unreachable (depth 0 always works)");
}

FinderResult oracle_best(const Embedding& host, const Coloring& chi,
                         bool type_mono, OracleOptions opt) {
  return oracle_best_fn(
      host, chi.arity(),
      [&](const std::vector<Path>& s) { return chi.try_color(s); }, type_mono,
      opt);
}

BipartiteResult oracle_bipartite_best(const Embedding& left,
                                      const Embedding& right,
                                      const CrossColorFn& chi,
                                      OracleOptions opt) {
  std::uint64_t limit = opt.limit ? opt.limit : oracle_limit_from_env();
  std::uint64_t seen = 0;
  int maxd = std::min(left.depth, right.depth);
  if (opt.max_depth >= 0) maxd = std::min(maxd, opt.max_depth);
  for (int d = maxd; d >= 0; --d) {
    BipartiteResult out;
    bool found = false;
    for_each_subtree(left, d, false, [&](const Embedding& l) {
      return for_each_subtree(right, d, false, [&](const Embedding& r) {
        if (++seen > limit)
          throw std::runtime_error(
              "oracle infeasible: enumeration limit hit");
        int c = chi(l.vertices[0], r.vertices[0]);
        if (!verify_cross(l, r, chi, c)) return true;
        out = {l, r, c};
        found = true;
        return false;
      });
    });
    if (found) return out;
  }
  throw std::logic_error("oracle_bipartite_best: unreachable");
}

}  // namespace ramsey
