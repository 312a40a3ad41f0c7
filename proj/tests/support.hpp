#pragma once

// Shared fixtures for the test binaries: tiny named graphs, seeded structured
// generators (each plants a known small value of one structural parameter),
// and independent exhaustive oracles.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "tms/graph.hpp"
#include "tms/instance.hpp"
#include "tms/solver_fen.hpp"
#include "tms/util.hpp"

namespace tms::testing {

inline Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(0, n - 1);
  return g;
}

// Center is vertex 0.
inline Graph star_graph(int leaves) {
  Graph g(leaves + 1);
  for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// Forest test for g minus `dropped`: a graph is acyclic iff its edge count
// equals vertex count minus component count (dropped vertices survive as
// isolated singletons, which keeps both sides of the identity consistent).
inline bool forest_after_deleting(const Graph& g, const ElementSet& dropped) {
  Graph h(g.vertex_count());
  for (auto [u, v] : g.edges())
    if (!set_contains(dropped, u) && !set_contains(dropped, v)) h.add_edge(u, v);
  auto comp = h.component_ids();
  const int components =
      comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  return h.edge_count() == h.vertex_count() - components;
}

inline TmsInstance make_instance(Graph g, std::vector<std::pair<int, int>> pairs, long long k,
                                 Rational alpha = {}) {
  TmsInstance inst;
  inst.graph = std::move(g);
  for (auto& [u, v] : pairs)
    if (u > v) std::swap(u, v);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  inst.terminals = std::move(pairs);
  inst.k = k;
  inst.alpha = alpha;
  inst.validate();
  return inst;
}

// Same raw-draw arithmetic as the library generators: the stream is pinned to
// mt19937_64, so fixtures are stable across standard libraries.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  int below(int n) { return n > 0 ? static_cast<int>(eng() % static_cast<std::uint64_t>(n)) : 0; }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }  // inclusive
  bool flip(double p = 0.5) { return unit() < p; }
};

// Up to max_pairs distinct terminal pairs (u <= v, degenerate allowed), all
// within one component of g.
inline std::vector<std::pair<int, int>> random_pairs(const Graph& g, Rng& rng, int max_pairs,
                                                     bool allow_degenerate = true) {
  std::vector<int> comp = g.component_ids();
  std::set<std::pair<int, int>> chosen;
  const int want = rng.range(0, max_pairs);
  for (int attempts = 0; static_cast<int>(chosen.size()) < want && attempts < 20 * max_pairs + 40;
       ++attempts) {
    int u = rng.below(g.vertex_count());
    int v = rng.below(g.vertex_count());
    if (comp[u] != comp[v]) continue;
    if (u == v && !allow_degenerate) continue;
    chosen.insert({std::min(u, v), std::max(u, v)});
  }
  return {chosen.begin(), chosen.end()};
}

// Connected unit-weight graph whose planted cluster deletion set has size
// q <= max_q: removing the first q vertices leaves disjoint cliques.
inline TmsInstance planted_cluster_instance(std::uint64_t seed, int max_q = 3, int max_pairs = 8,
                                            long long max_k = 3) {
  Rng rng(seed);
  const int q = rng.range(0, max_q);
  const int cliques = q == 0 ? 1 : rng.range(1, 3);
  std::vector<int> sizes(static_cast<size_t>(cliques));
  int n = q;
  for (int& s : sizes) {
    s = rng.range(1, 4);
    n += s;
  }
  Graph g(n);
  int next = q;
  std::vector<int> heads;
  for (int s : sizes) {
    for (int a = next; a < next + s; ++a)
      for (int b = a + 1; b < next + s; ++b) g.add_edge(a, b);
    heads.push_back(next);
    next += s;
  }
  for (int m = 0; m < q; ++m) {
    for (int v = q; v < n; ++v)
      if (rng.flip(0.4)) g.add_edge(m, v);
    for (int m2 = m + 1; m2 < q; ++m2)
      if (rng.flip(0.4)) g.add_edge(m, m2);
  }
  // Wire everything to vertex 0 so the instance is connected; edges incident
  // to the modulator never break the clique structure behind it.
  if (q > 0) {
    for (int h : heads)
      if (!g.has_edge(0, h)) g.add_edge(0, h);
    for (int m = 1; m < q; ++m)
      if (!g.has_edge(0, m)) g.add_edge(0, m);
  }
  auto pairs = random_pairs(g, rng, max_pairs);
  return make_instance(std::move(g), std::move(pairs), rng.range(0, static_cast<int>(max_k)));
}

// Connected unit-weight graph with at most max_t neighborhood-diversity
// classes: same-class vertices get identical adjacency outside themselves,
// classes are cliques or independent sets, and class pairs join completely or
// not at all (class 0 is chained to every later class).
inline TmsInstance planted_nd_instance(std::uint64_t seed, int max_t = 5, int max_pairs = 8,
                                       long long max_k = 3) {
  Rng rng(seed);
  const int t = rng.range(1, max_t);
  std::vector<int> sizes(static_cast<size_t>(t));
  int n = 0;
  for (int& s : sizes) {
    s = rng.range(1, t == 1 ? 6 : 3);
    n += s;
  }
  std::vector<int> start(static_cast<size_t>(t));
  Graph g(n);
  int next = 0;
  for (int c = 0; c < t; ++c) {
    start[static_cast<size_t>(c)] = next;
    const bool clique = (t == 1 && sizes[static_cast<size_t>(c)] > 1) ? true : rng.flip();
    if (clique)
      for (int a = next; a < next + sizes[static_cast<size_t>(c)]; ++a)
        for (int b = a + 1; b < next + sizes[static_cast<size_t>(c)]; ++b) g.add_edge(a, b);
    next += sizes[static_cast<size_t>(c)];
  }
  for (int c = 0; c < t; ++c)
    for (int d = c + 1; d < t; ++d) {
      const bool joined = c == 0 || rng.flip(0.4);
      if (!joined) continue;
      for (int a = start[static_cast<size_t>(c)]; a < start[static_cast<size_t>(c)] + sizes[static_cast<size_t>(c)]; ++a)
        for (int b = start[static_cast<size_t>(d)]; b < start[static_cast<size_t>(d)] + sizes[static_cast<size_t>(d)]; ++b)
          g.add_edge(a, b);
    }
  auto pairs = random_pairs(g, rng, max_pairs);
  return make_instance(std::move(g), std::move(pairs), rng.range(0, static_cast<int>(max_k)));
}

// Connected weighted graph whose planted vertex cover is the first c <= max_c
// vertices; the rest form an independent set.
inline TmsInstance planted_vc_instance(std::uint64_t seed, int max_c = 4, Weight max_w = 5,
                                       int max_pairs = 8, long long max_k = 3) {
  Rng rng(seed);
  const int c = rng.range(0, max_c);
  const int isolated = c == 0 ? 1 : rng.range(1, 5);
  const int n = std::max(1, c + isolated);
  Graph g(n);
  auto w = [&]() { return static_cast<Weight>(rng.range(1, static_cast<int>(max_w))); };
  for (int a = 0; a < c; ++a)
    for (int b = a + 1; b < c; ++b)
      if (rng.flip(0.4)) g.add_edge(a, b, w());
  for (int v = c; v < n; ++v) {
    bool attached = false;
    for (int a = 0; a < c; ++a)
      if (rng.flip(0.5)) {
        g.add_edge(a, v, w());
        attached = true;
      }
    if (!attached && c > 0) g.add_edge(0, v, w());
  }
  for (int a = 1; a < c; ++a)
    if (!g.has_edge(0, a)) g.add_edge(0, a, w());
  auto pairs = random_pairs(g, rng, max_pairs);
  return make_instance(std::move(g), std::move(pairs), rng.range(0, static_cast<int>(max_k)));
}

// Connected unit-weight graph with exactly t <= max_t feedback edges: a
// random spanning tree plus t extras.
inline TmsInstance planted_fen_instance(std::uint64_t seed, int max_t = 3, int max_pairs = 8,
                                        long long max_k = 3) {
  Rng rng(seed);
  const int n = rng.range(2, 10);
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(rng.below(v), v);
  const int t = rng.range(0, max_t);
  for (int added = 0, attempts = 0; added < t && attempts < 200; ++attempts) {
    int u = rng.below(n);
    int v = rng.below(n);
    if (u == v || g.has_edge(u, v)) continue;
    g.add_edge(u, v);
    ++added;
  }
  auto pairs = random_pairs(g, rng, max_pairs);
  return make_instance(std::move(g), std::move(pairs), rng.range(0, static_cast<int>(max_k)));
}

// Structural property of shortest-path sets: SP(u,v) induces a connected
// subgraph in which every vertex other than u and v has at least two
// neighbors inside the set.
inline bool sp_set_well_formed(const Graph& g, int u, int v) {
  const ElementSet s = sp_set(g, u, v);
  std::vector<int> stack{s[0]};
  ElementSet seen{s[0]};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (auto [y, w] : g.neighbors(x))
      if (set_contains(s, y) && !set_contains(seen, y)) {
        seen = set_union(seen, {y});
        stack.push_back(y);
      }
  }
  if (seen != s) return false;
  for (int x : s) {
    if (x == u || x == v) continue;
    int inside = 0;
    for (auto [y, w] : g.neighbors(x)) inside += set_contains(s, y);
    if (inside < 2) return false;
  }
  return true;
}

// Random flower: core plus petals of length <= max_len, core edges present
// per petal end with high probability, and path sets that induce paths (petal
// runs, or the core joined with runs anchored at core-adjacent petal ends).
inline FlowerInstance random_flower(std::uint64_t seed, int max_petals = 4, int max_len = 6,
                                    int max_paths = 8, int max_budget = 2) {
  Rng rng(seed);
  const int petals = rng.range(1, max_petals);
  FlowerInstance fl;
  std::vector<int> len(static_cast<size_t>(petals));
  int n = 0;
  for (int i = 0; i < petals; ++i) {
    len[static_cast<size_t>(i)] = rng.range(1, max_len);
    std::vector<int> petal(static_cast<size_t>(len[static_cast<size_t>(i)]));
    for (int& v : petal) v = n++;
    fl.petals.push_back(std::move(petal));
  }
  fl.core = n++;
  fl.graph = Graph(n);
  fl.orig.resize(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) fl.orig[static_cast<size_t>(v)] = v;

  std::vector<std::pair<bool, bool>> anchors(static_cast<size_t>(petals));
  for (int i = 0; i < petals; ++i) {
    const auto& petal = fl.petals[static_cast<size_t>(i)];
    for (std::size_t j = 0; j + 1 < petal.size(); ++j) fl.graph.add_edge(petal[j], petal[j + 1]);
    const bool left = rng.flip(0.85);
    const bool right = petal.size() > 1 && rng.flip(0.85);
    if (left) fl.graph.add_edge(petal.front(), fl.core);
    if (right) fl.graph.add_edge(petal.back(), fl.core);
    anchors[static_cast<size_t>(i)] = {left, right};
    fl.budgets.push_back(rng.range(1, std::min(max_budget, len[static_cast<size_t>(i)])));
  }

  auto run_set = [&](int i, int lo, int hi) {  // positions [lo, hi], 0-based
    ElementSet s;
    for (int p = lo; p <= hi; ++p) s.push_back(fl.petals[static_cast<size_t>(i)][static_cast<size_t>(p)]);
    return s;
  };
  // A run of `depth` vertices from one anchored end of petal i, plus the core.
  // Covering the whole petal is a path only when the far core edge is absent.
  auto anchored_run = [&](int i, bool from_left) {
    auto [left, right] = anchors[static_cast<size_t>(i)];
    const int li = len[static_cast<size_t>(i)];
    const int max_depth = (left && right) ? li - 1 : li;
    const int depth = rng.range(1, max_depth);
    ElementSet s = from_left ? run_set(i, 0, depth - 1) : run_set(i, li - depth, li - 1);
    s.push_back(fl.core);
    return make_set(s);
  };
  auto pick_end = [&](int i) {  // false = left, true = right; caller checked some anchor exists
    auto [left, right] = anchors[static_cast<size_t>(i)];
    if (left && right) return rng.flip();
    return right;
  };

  const int paths = rng.range(1, max_paths);
  for (int pth = 0; pth < paths; ++pth) {
    const int i = rng.below(petals);
    const int li = len[static_cast<size_t>(i)];
    auto [left, right] = anchors[static_cast<size_t>(i)];
    const bool anchored = left || right;
    const int roll = rng.below(12);
    if (roll < 4 || !anchored) {  // plain petal run
      const int a = rng.below(li);
      fl.paths.push_back(run_set(i, a, rng.range(a, li - 1)));
    } else if (roll == 4) {  // core alone: no pick can hit it
      fl.paths.push_back({fl.core});
    } else if (roll <= 8) {  // core + one anchored run
      fl.paths.push_back(anchored_run(i, !pick_end(i)));
    } else if (rng.flip() && left && right && li >= 3) {
      // both ends of one petal through the core, with a gap between the runs
      const int a = rng.range(1, li - 2);      // prefix [0, a-1]
      const int b = rng.range(a + 1, li - 1);  // suffix [b, li-1]
      ElementSet s = set_union(run_set(i, 0, a - 1), run_set(i, b, li - 1));
      fl.paths.push_back(set_union(s, {fl.core}));
    } else {  // runs in two distinct petals joined at the core
      const int j = rng.below(petals);
      auto [l2, r2] = anchors[static_cast<size_t>(j)];
      if (j == i || (!l2 && !r2)) {
        fl.paths.push_back(anchored_run(i, !pick_end(i)));
      } else {
        ElementSet s = set_union(anchored_run(i, !pick_end(i)), anchored_run(j, !pick_end(j)));
        fl.paths.push_back(make_set(s));
      }
    }
  }
  std::sort(fl.paths.begin(), fl.paths.end());
  fl.paths.erase(std::unique(fl.paths.begin(), fl.paths.end()), fl.paths.end());
  fl.validate();
  return fl;
}

// Exhaustive flower oracle: exactly budgets[i] picks inside petal i, every
// path set hit. Returns some feasible pick set or absent.
inline std::optional<ElementSet> flower_brute_force(const FlowerInstance& fl) {
  std::optional<ElementSet> found;
  std::vector<int> picks;
  auto hit_all = [&](const ElementSet& s) {
    for (const auto& p : fl.paths)
      if (set_intersect(p, s).empty()) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t petal) -> bool {
    if (petal == fl.petals.size()) {
      ElementSet s = make_set(picks);
      if (!hit_all(s)) return false;
      found = s;
      return true;
    }
    const auto& pv = fl.petals[petal];
    return for_each_combination(static_cast<int>(pv.size()), fl.budgets[petal],
                                [&](const std::vector<int>& idx) {
                                  for (int x : idx) picks.push_back(pv[static_cast<size_t>(x)]);
                                  bool done = self(self, petal + 1);
                                  picks.resize(picks.size() - idx.size());
                                  return done;
                                });
  };
  rec(rec, 0);
  return found;
}

}  // namespace tms::testing
