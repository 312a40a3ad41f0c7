#include "tms/solver_fen.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "tms/errors.hpp"

namespace tms {

namespace {

// Degree-one elimination over an alive-mask so callers can splice in extra
// structure and resume. Degenerate pairs force their vertex once its degree
// drops to <= 1 (it then lies on no other pair's shortest paths); other
// degree-one vertices are dominated by their unique neighbor.
struct PeelState {
  std::vector<char> alive;
  std::set<std::pair<int, int>> pairs;  // normalized u <= v
  ElementSet forced;
  long long k = 0;
};

void peel_degree_one(const Graph& g, PeelState& st) {
  const int n = g.vertex_count();
  auto live_degree = [&](int v) {
    int d = 0;
    for (auto [u, w] : g.neighbors(v))
      if (st.alive[u]) ++d;
    return d;
  };
  for (;;) {
    int forced = -1;
    for (int v = 0; v < n && forced == -1; ++v)
      if (st.alive[v] && live_degree(v) <= 1 && st.pairs.count({v, v})) forced = v;
    if (forced != -1) {
      st.forced = set_union(st.forced, {forced});
      --st.k;
      std::erase_if(st.pairs, [&](const std::pair<int, int>& p) {
        return p.first == forced || p.second == forced;
      });
      continue;  // the vertex itself is spliced out by a later iteration
    }
    int pick = -1;
    for (int v = 0; v < n && pick == -1; ++v)
      if (st.alive[v] && live_degree(v) == 1) pick = v;
    if (pick == -1) return;
    int u = -1;
    for (auto [w, wt] : g.neighbors(pick))
      if (st.alive[w]) u = w;
    std::vector<std::pair<int, int>> rewritten;
    std::erase_if(st.pairs, [&](const std::pair<int, int>& p) {
      if (p.first != pick && p.second != pick) return false;
      int y = p.first == pick ? p.second : p.first;  // y != pick: degenerate handled above
      rewritten.push_back({std::min(u, y), std::max(u, y)});
      return true;
    });
    st.pairs.insert(rewritten.begin(), rewritten.end());
    st.alive[pick] = 0;
  }
}

// Compacts the alive part of g; orig maps new ids back.
Graph compact_alive(const Graph& g, const std::vector<char>& alive, std::vector<int>& newid,
                    std::vector<int>& orig) {
  newid.assign(g.vertex_count(), -1);
  orig.clear();
  Graph out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (alive[v]) {
      newid[v] = out.add_vertex();
      orig.push_back(v);
    }
  for (auto [u, v] : g.edges())
    if (newid[u] != -1 && newid[v] != -1) out.add_edge(newid[u], newid[v], g.edge_weight(u, v));
  return out;
}

// Right-endpoint greedy over [l, r] position intervals: minimum stabbing, and
// each pick is as far right as any minimum stabbing allows.
std::vector<int> stab_rightmost(std::vector<std::pair<int, int>> iv) {
  std::sort(iv.begin(), iv.end(),
            [](const std::pair<int, int>& a, const std::pair<int, int>& b) {
              return a.second != b.second ? a.second < b.second : a.first < b.first;
            });
  std::vector<int> picks;
  int covered = std::numeric_limits<int>::min();
  for (auto [l, r] : iv)
    if (l > covered) {
      picks.push_back(r);
      covered = r;
    }
  return picks;
}

}  // namespace

FenPreprocessed preprocess_degree_one(const TmsInstance& inst) {
  inst.validate();
  if (!inst.graph.unit_weights()) throw InvalidInstance("degree-one elimination needs unit weights");
  if (!inst.alpha.is_zero())
    throw InvalidInstance("degree-one elimination handles exact monitoring only (alpha = 0)");
  PeelState st;
  st.alive.assign(inst.graph.vertex_count(), 1);
  st.pairs.insert(inst.terminals.begin(), inst.terminals.end());
  st.k = inst.k;
  peel_degree_one(inst.graph, st);

  FenPreprocessed out;
  out.k = st.k;
  out.forced = st.forced;
  std::vector<int> newid;
  out.graph = compact_alive(inst.graph, st.alive, newid, out.orig);
  for (const auto& [u, v] : st.pairs) out.terminals.push_back({newid[u], newid[v]});
  return out;  // newid is monotone, so terminals stay normalized and sorted
}

Decomposition decompose(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) throw InvalidInstance("decompose: empty graph");
  for (int c : g.component_ids())
    if (c != 0) throw InvalidInstance("decompose: graph must be connected");
  for (int v = 0; v < n; ++v)
    if (g.degree(v) < 2) throw InvalidInstance("decompose: minimum degree two required");

  Decomposition dec;
  std::vector<char> high(n, 0);
  for (int v = 0; v < n; ++v)
    if (g.degree(v) >= 3) {
      high[v] = 1;
      dec.high.push_back(v);
    }
  if (dec.high.empty()) throw InvalidInstance("decompose: cycle graph has no degree->=3 vertex");

  auto inner_neighbors = [&](int v) {
    std::vector<int> out;
    for (auto [u, w] : g.neighbors(v))
      if (!high[u]) out.push_back(u);
    return out;
  };
  std::vector<char> seen(n, 0);
  for (int v = 0; v < n; ++v) {
    if (high[v] || seen[v]) continue;
    std::vector<int> comp, stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int u : inner_neighbors(x))
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    std::vector<int> path;
    if (comp.size() == 1) {
      path = comp;
    } else {
      int start = -1;
      for (int x : comp)
        if (inner_neighbors(x).size() <= 1) {
          start = x;
          break;
        }
      if (start == -1) throw InvalidInstance("decompose: non-path component off the core");
      int prev = -1, cur = start;
      while (cur != -1) {
        path.push_back(cur);
        int next = -1;
        for (int u : inner_neighbors(cur))
          if (u != prev) next = u;
        prev = cur;
        cur = next;
      }
      if (path.size() != comp.size()) throw InternalError("decompose: petal walk left vertices behind");
    }
    // each petal end hangs off the degree->=3 set by exactly one edge
    auto outer = [&](int x) {
      int d = 0;
      for (auto [u, w] : g.neighbors(x))
        if (high[u]) ++d;
      return d;
    };
    if (path.size() == 1) {
      if (outer(path[0]) != 2) throw InternalError("decompose: single-vertex petal attachment");
    } else {
      if (outer(path.front()) != 1 || outer(path.back()) != 1)
        throw InternalError("decompose: petal endpoint attachment");
      for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (outer(path[i]) != 0) throw InternalError("decompose: petal interior attachment");
    }
    dec.petals.push_back(std::move(path));
  }

  const long long cycles = g.edge_count() - n + 1;
  if (static_cast<long long>(dec.high.size()) > 2 * cycles ||
      static_cast<long long>(dec.petals.size()) > 3 * cycles)
    throw InternalError("decompose: size bounds violated");
  return dec;
}

int opt_d(const std::vector<int>& petal, const std::vector<ElementSet>& intervals) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < petal.size(); ++i) pos[petal[i]] = static_cast<int>(i) + 1;
  std::vector<std::pair<int, int>> iv;
  for (const auto& s : intervals) {
    if (s.empty()) throw InvalidInstance("opt_d: empty interval");
    int lo = std::numeric_limits<int>::max(), hi = 0;
    for (int v : s) {
      auto it = pos.find(v);
      if (it == pos.end()) throw InvalidInstance("opt_d: interval vertex outside the petal");
      lo = std::min(lo, it->second);
      hi = std::max(hi, it->second);
    }
    if (hi - lo + 1 != static_cast<int>(s.size()))
      throw InvalidInstance("opt_d: interval is not contiguous on the petal");
    iv.push_back({lo, hi});
  }
  return static_cast<int>(stab_rightmost(iv).size());
}

void FlowerInstance::validate() const {
  const int n = graph.vertex_count();
  if (core < 0 || core >= n) throw InternalError("flower: core out of range");
  if (budgets.size() != petals.size()) throw InternalError("flower: budget list misaligned");
  if (static_cast<int>(orig.size()) != n) throw InternalError("flower: provenance misaligned");
  for (int b : budgets)
    if (b < 1) throw InternalError("flower: budget below one");

  std::vector<int> owner(n, -1), position(n, -1);
  for (std::size_t i = 0; i < petals.size(); ++i) {
    if (petals[i].empty()) throw InternalError("flower: empty petal");
    for (std::size_t j = 0; j < petals[i].size(); ++j) {
      int v = petals[i][j];
      if (v < 0 || v >= n || v == core || owner[v] != -1)
        throw InternalError("flower: petals must partition the non-core vertices");
      owner[v] = static_cast<int>(i);
      position[v] = static_cast<int>(j);
    }
    for (std::size_t j = 0; j + 1 < petals[i].size(); ++j)
      if (!graph.has_edge(petals[i][j], petals[i][j + 1]))
        throw InternalError("flower: petal not a path");
  }
  for (int v = 0; v < n; ++v)
    if (v != core && owner[v] == -1) throw InternalError("flower: vertex outside every petal");

  for (auto [u, v] : graph.edges()) {
    if (u == core || v == core) {
      int x = u == core ? v : u;
      int last = static_cast<int>(petals[owner[x]].size()) - 1;
      if (position[x] != 0 && position[x] != last)
        throw InternalError("flower: core adjacent to petal interior");
    } else {
      if (owner[u] != owner[v]) throw InternalError("flower: edge between petals");
      if (std::abs(position[u] - position[v]) != 1) throw InternalError("flower: chord inside petal");
    }
  }

  for (const auto& p : paths) {
    if (p.empty()) throw InternalError("flower: empty path set");
    for (int v : p)
      if (v < 0 || v >= n) throw InternalError("flower: path vertex out of range");
    int edges = 0;
    std::map<int, int> deg;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        if (graph.has_edge(p[i], p[j])) {
          ++edges;
          ++deg[p[i]];
          ++deg[p[j]];
        }
    if (edges != static_cast<int>(p.size()) - 1)
      throw InternalError("flower: path set does not induce a tree");
    for (auto [v, d] : deg)
      if (d > 2) throw InternalError("flower: path set induces a branching");
    // a connected check: tree with max degree 2 is a path, so walk from any end
    std::vector<int> stack{p[0]};
    ElementSet seen{p[0]};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : p)
        if (y != x && graph.has_edge(x, y) && !set_contains(seen, y)) {
          seen = set_union(seen, {y});
          stack.push_back(y);
        }
    }
    if (seen.size() != p.size()) throw InternalError("flower: path set disconnected");
  }
}

std::optional<FlowerInstance> build_hpfb(const TmsInstance& inst, const Decomposition& dec,
                                         const std::vector<char>& f_v, const std::vector<char>& f_d,
                                         const AllPairs* apsp_in, const std::vector<int>* petal_opt) {
  if (f_v.size() != dec.high.size() || f_d.size() != dec.petals.size())
    throw InvalidInstance("build_hpfb: guess vectors misaligned with the decomposition");
  std::optional<AllPairs> apsp_own;
  if (!apsp_in) apsp_own.emplace(inst.graph);
  const AllPairs& apsp = apsp_in ? *apsp_in : *apsp_own;

  std::vector<ElementSet> petal_sets;
  petal_sets.reserve(dec.petals.size());
  for (const auto& p : dec.petals) petal_sets.push_back(make_set(p));

  std::vector<ElementSet> sp_sets;
  sp_sets.reserve(inst.terminals.size());
  for (const auto& [x, y] : inst.terminals) sp_sets.push_back(apsp.sp(x, y));

  std::vector<int> opt;
  if (petal_opt) {
    opt = *petal_opt;
  } else {
    for (std::size_t j = 0; j < dec.petals.size(); ++j) {
      std::vector<ElementSet> local;
      for (const auto& sp : sp_sets)
        if (set_subset(sp, petal_sets[j])) local.push_back(sp);
      opt.push_back(opt_d(dec.petals[j], local));
    }
  }

  long long need = 0;
  std::vector<int> budget(dec.petals.size());
  for (std::size_t i = 0; i < dec.high.size(); ++i)
    if (f_v[i]) ++need;
  for (std::size_t j = 0; j < dec.petals.size(); ++j) {
    budget[j] = opt[j] + (f_d[j] ? 1 : 0);
    need += budget[j];
  }
  if (need > inst.k) return std::nullopt;

  ElementSet chosen;
  for (std::size_t i = 0; i < dec.high.size(); ++i)
    if (f_v[i]) chosen.push_back(dec.high[i]);  // dec.high ascending

  // Sets already satisfied: hit by a chosen vertex, or containing a whole
  // petal that is guaranteed at least one pick.
  std::erase_if(sp_sets, [&](const ElementSet& u) {
    if (!set_intersect(u, chosen).empty()) return true;
    for (std::size_t j = 0; j < petal_sets.size(); ++j)
      if (budget[j] > 0 && set_subset(petal_sets[j], u)) return true;
    return false;
  });

  ElementSet dead;
  for (std::size_t j = 0; j < petal_sets.size(); ++j)
    if (budget[j] == 0) dead = set_union(dead, petal_sets[j]);
  for (auto& u : sp_sets) {
    u = set_minus(u, dead);
    if (u.empty()) throw InternalError("build_hpfb: terminal set emptied");
  }

  // Relabel: surviving petal vertices in path order, then the core.
  const int n = inst.graph.vertex_count();
  std::vector<int> fid(n, -1), high_index(n, -1);
  for (std::size_t i = 0; i < dec.high.size(); ++i) high_index[dec.high[i]] = static_cast<int>(i);
  FlowerInstance fl;
  for (std::size_t j = 0; j < dec.petals.size(); ++j) {
    if (budget[j] == 0) continue;
    std::vector<int> petal;
    for (int v : dec.petals[j]) {
      fid[v] = static_cast<int>(fl.orig.size());
      fl.orig.push_back(v);
      petal.push_back(fid[v]);
    }
    fl.petals.push_back(std::move(petal));
    fl.budgets.push_back(budget[j]);
  }
  fl.core = static_cast<int>(fl.orig.size());
  fl.orig.push_back(-1);

  fl.graph = Graph(static_cast<int>(fl.orig.size()));
  for (const auto& petal : fl.petals)
    for (std::size_t j = 0; j + 1 < petal.size(); ++j) fl.graph.add_edge(petal[j], petal[j + 1]);
  for (const auto& petal : fl.petals)
    for (int end : {petal.front(), petal.back()})
      for (auto [nb, w] : inst.graph.neighbors(fl.orig[end]))
        if (high_index[nb] != -1 && !f_v[high_index[nb]] && !fl.graph.has_edge(end, fl.core))
          fl.graph.add_edge(end, fl.core);

  for (const auto& u : sp_sets) {
    ElementSet mapped;
    for (int v : u) {
      if (fid[v] != -1) {
        mapped.push_back(fid[v]);
      } else if (high_index[v] != -1 && !f_v[high_index[v]]) {
        mapped.push_back(fl.core);
      } else {
        throw InternalError("build_hpfb: surviving set references a removed vertex");
      }
    }
    fl.paths.push_back(make_set(mapped));
  }
  std::sort(fl.paths.begin(), fl.paths.end());
  fl.paths.erase(std::unique(fl.paths.begin(), fl.paths.end()), fl.paths.end());

  fl.validate();
  return fl;
}

namespace {

// Implication-graph 2-SAT (Kosaraju). Component ids ascend along implication
// edges, so a variable is true when its positive literal sits deeper.
struct TwoSat {
  int vars;
  std::vector<std::vector<int>> adj, radj;

  explicit TwoSat(int v) : vars(v), adj(2 * v), radj(2 * v) {}
  static int pos(int v) { return 2 * v; }
  static int neg(int l) { return l ^ 1; }
  void clause(int a, int b) {
    adj[neg(a)].push_back(b);
    radj[b].push_back(neg(a));
    adj[neg(b)].push_back(a);
    radj[a].push_back(neg(b));
  }
  void unit(int a) { clause(a, a); }

  std::optional<std::vector<char>> solve() const {
    const int m = 2 * vars;
    std::vector<int> order;
    order.reserve(m);
    std::vector<char> vis(m, 0);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int s = 0; s < m; ++s) {
      if (vis[s]) continue;
      stack.push_back({s, 0});
      vis[s] = 1;
      while (!stack.empty()) {
        auto& [x, i] = stack.back();
        if (i < adj[x].size()) {
          int y = adj[x][i++];
          if (!vis[y]) {
            vis[y] = 1;
            stack.push_back({y, 0});
          }
        } else {
          order.push_back(x);
          stack.pop_back();
        }
      }
    }
    std::vector<int> comp(m, -1);
    int groups = 0;
    for (int idx = m - 1; idx >= 0; --idx) {
      int s = order[idx];
      if (comp[s] != -1) continue;
      std::vector<int> st{s};
      comp[s] = groups;
      while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (int y : radj[x])
          if (comp[y] == -1) {
            comp[y] = groups;
            st.push_back(y);
          }
      }
      ++groups;
    }
    std::vector<char> out(vars);
    for (int v = 0; v < vars; ++v) {
      if (comp[pos(v)] == comp[pos(v) ^ 1]) return std::nullopt;
      out[v] = comp[pos(v)] > comp[pos(v) ^ 1];
    }
    return out;
  }
};

// Per-petal placement table: with the first pick at position f (1-based) and
// the remaining budget greedily stabbing every interval strictly right of f,
// best_last[f] is the farthest reachable last pick (-1 when infeasible).
struct PetalTable {
  int len = 0, budget = 0;
  std::vector<std::pair<int, int>> intervals;
  std::vector<int> best_last;    // index 1..len
  std::vector<int> prefix_best;  // prefix max of best_last
  int first_min = -1;            // smallest feasible first position

  void build() {
    best_last.assign(len + 1, -1);
    prefix_best.assign(len + 1, -1);
    int min_right = len;
    for (auto [l, r] : intervals) min_right = std::min(min_right, r);
    for (int f = 1; f <= len; ++f) {
      if (f > min_right || len - f + 1 < budget) continue;
      std::vector<std::pair<int, int>> rest;
      for (auto [l, r] : intervals)
        if (l > f) rest.push_back({l, r});
      std::vector<int> picks = stab_rightmost(rest);
      int need = static_cast<int>(picks.size());
      if (budget - 1 < need) continue;
      if (budget - 1 > need)
        best_last[f] = len;
      else
        best_last[f] = picks.empty() ? f : picks.back();
      if (first_min == -1) first_min = f;
    }
    for (int a = 1; a <= len; ++a)
      prefix_best[a] = std::max(a > 1 ? prefix_best[a - 1] : -1, best_last[a]);
  }

  // Deterministic selection with first pick <= a, last pick >= len - c + 1.
  std::vector<int> select(int a, int c) const {
    const int target = len - c + 1;
    int f = -1;
    for (int x = 1; x <= a; ++x)
      if (best_last[x] >= target) {
        f = x;
        break;
      }
    if (f == -1) throw InternalError("flower petal selection: thresholds unreachable");
    std::vector<std::pair<int, int>> rest;
    for (auto [l, r] : intervals)
      if (l > f) rest.push_back({l, r});
    std::vector<int> picks = stab_rightmost(rest);
    picks.insert(picks.begin(), f);
    ElementSet used = make_set(picks);
    if (static_cast<int>(picks.size()) < budget && used.back() < target) {
      picks.push_back(target);
      used = set_union(used, {target});
    }
    for (int x = f + 1; static_cast<int>(picks.size()) < budget && x <= len; ++x)
      if (!set_contains(used, x)) {
        picks.push_back(x);
        used = set_union(used, {x});
      }
    if (static_cast<int>(picks.size()) != budget)
      throw InternalError("flower petal selection: budget not met");
    return picks;
  }
};

}  // namespace

std::optional<ElementSet> solve_hpfb(const FlowerInstance& fl) {
  fl.validate();
  const int n = fl.graph.vertex_count();
  const int l = static_cast<int>(fl.petals.size());
  std::vector<int> owner(n, -1), position(n, -1);
  for (int i = 0; i < l; ++i)
    for (std::size_t j = 0; j < fl.petals[i].size(); ++j) {
      owner[fl.petals[i][j]] = i;
      position[fl.petals[i][j]] = static_cast<int>(j) + 1;  // 1-based
    }

  std::vector<PetalTable> tables(l);
  for (int i = 0; i < l; ++i) {
    tables[i].len = static_cast<int>(fl.petals[i].size());
    tables[i].budget = fl.budgets[i];
  }

  // Classify each required path into per-petal runs; a run anchored at a petal
  // end doubles as a coverage-depth demand from that end.
  struct Demand {
    int petal;
    bool from_right;
    int depth;
  };
  std::vector<std::pair<Demand, Demand>> disjunctions;
  for (const auto& p : fl.paths) {
    bool has_core = set_contains(p, fl.core);
    std::map<int, std::vector<int>> by_petal;
    for (int v : p)
      if (v != fl.core) by_petal[owner[v]].push_back(position[v]);
    std::vector<std::array<int, 3>> runs;  // petal, lo, hi
    for (auto& [i, ps] : by_petal) {
      std::sort(ps.begin(), ps.end());
      int lo = ps[0];
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (j + 1 < ps.size() && ps[j + 1] == ps[j] + 1) continue;
        runs.push_back({i, lo, ps[j]});
        if (j + 1 < ps.size()) lo = ps[j + 1];
      }
    }
    if (!has_core) {
      if (runs.size() != 1) throw InternalError("flower path without core spans several runs");
      tables[runs[0][0]].intervals.push_back({runs[0][1], runs[0][2]});
      continue;
    }
    if (runs.empty()) return std::nullopt;  // the path is the core alone, which picks avoid
    if (runs.size() > 2) throw InternalError("flower path branches at the core");
    std::vector<Demand> demands;
    bool satisfied = false;
    for (auto [i, lo, hi] : runs) {
      const int len = tables[i].len;
      if (lo == 1 && hi == len) {
        satisfied = true;  // whole petal: any of its >= 1 picks hits
      } else if (lo == 1) {
        demands.push_back({i, false, hi});
      } else if (hi == len) {
        demands.push_back({i, true, len - lo + 1});
      } else {
        throw InternalError("flower path run not anchored at a petal end");
      }
    }
    if (satisfied) continue;
    if (demands.size() == 1)
      tables[demands[0].petal].intervals.push_back(
          demands[0].from_right
              ? std::pair<int, int>{tables[demands[0].petal].len - demands[0].depth + 1,
                                    tables[demands[0].petal].len}
              : std::pair<int, int>{1, demands[0].depth});
    else
      disjunctions.push_back({demands[0], demands[1]});
  }

  for (auto& t : tables) {
    t.build();
    if (t.first_min == -1) return std::nullopt;
  }

  // 2-SAT over monotone coverage thresholds: per petal, "first pick within a of
  // the left end" (u_a) and "last pick within c of the right end" (w_c).
  std::vector<int> base_u(l), base_w(l);
  int vars = 0;
  for (int i = 0; i < l; ++i) {
    base_u[i] = vars;
    vars += tables[i].len;
    base_w[i] = vars;
    vars += tables[i].len;
  }
  TwoSat ts(vars);
  auto lit = [&](const Demand& d) {
    int var = (d.from_right ? base_w[d.petal] : base_u[d.petal]) + d.depth - 1;
    return TwoSat::pos(var);
  };
  for (int i = 0; i < l; ++i) {
    const PetalTable& t = tables[i];
    for (int a = 1; a < t.len; ++a) {
      ts.clause(TwoSat::neg(TwoSat::pos(base_u[i] + a - 1)), TwoSat::pos(base_u[i] + a));
      ts.clause(TwoSat::neg(TwoSat::pos(base_w[i] + a - 1)), TwoSat::pos(base_w[i] + a));
    }
    for (int a = 1; a < t.first_min; ++a) ts.unit(TwoSat::neg(TwoSat::pos(base_u[i] + a - 1)));
    const int reach_all = t.len - t.prefix_best[t.len] + 1;
    for (int c = 1; c < reach_all; ++c) ts.unit(TwoSat::neg(TwoSat::pos(base_w[i] + c - 1)));
    for (int a = t.first_min; a <= t.len; ++a) {
      const int c_min = t.len - t.prefix_best[a] + 1;
      if (c_min >= 2)
        ts.clause(TwoSat::neg(TwoSat::pos(base_u[i] + a - 1)),
                  TwoSat::neg(TwoSat::pos(base_w[i] + c_min - 2)));
    }
  }
  for (const auto& [d1, d2] : disjunctions) ts.clause(lit(d1), lit(d2));

  auto assign = ts.solve();
  if (!assign) return std::nullopt;

  ElementSet out;
  for (int i = 0; i < l; ++i) {
    const PetalTable& t = tables[i];
    int a = t.len, c = t.len;
    for (int x = 1; x <= t.len; ++x)
      if ((*assign)[base_u[i] + x - 1]) {
        a = x;
        break;
      }
    for (int x = 1; x <= t.len; ++x)
      if ((*assign)[base_w[i] + x - 1]) {
        c = x;
        break;
      }
    for (int p : t.select(a, c)) out.push_back(fl.petals[i][p - 1]);
  }
  return make_set(out);
}

namespace {

struct FenContext {
  TmsInstance work;  // residual instance (compact ids)
  Decomposition dec;
  std::vector<int> opt;
  std::vector<int> orig;          // residual id -> augmented-graph id
  std::vector<int> guess_high;    // indices into dec.high open to selection
  ElementSet forced;              // augmented-graph ids
  int input_vertices = 0;
  std::optional<AllPairs> apsp;
};

// Runs one (f_v, f_d) guess; the certificate is in input-graph ids.
std::optional<ElementSet> try_fen_guess(const FenContext& cx, unsigned long long guess) {
  std::vector<char> f_v(cx.dec.high.size(), 0), f_d(cx.dec.petals.size(), 0);
  for (std::size_t i = 0; i < cx.guess_high.size(); ++i)
    if ((guess >> i) & 1ull) f_v[cx.guess_high[i]] = 1;
  for (std::size_t j = 0; j < cx.dec.petals.size(); ++j)
    if ((guess >> (cx.guess_high.size() + j)) & 1ull) f_d[j] = 1;

  auto fl = build_hpfb(cx.work, cx.dec, f_v, f_d, &*cx.apsp, &cx.opt);
  if (!fl) return std::nullopt;
  auto picks = solve_hpfb(*fl);
  if (!picks) return std::nullopt;

  ElementSet cert = cx.forced;
  for (std::size_t i = 0; i < cx.dec.high.size(); ++i)
    if (f_v[i]) cert = set_union(cert, {cx.orig[cx.dec.high[i]]});
  for (int v : *picks) cert = set_union(cert, {cx.orig[fl->orig[v]]});
  std::erase_if(cert, [&](int v) { return v >= cx.input_vertices; });  // helper vertices monitor nothing
  return cert;
}

}  // namespace

SolveResult solve_fen(const TmsInstance& inst,
                      std::optional<std::vector<std::pair<int, int>>> feedback,
                      const SolveOptions& opts) {
  inst.validate();
  if (!inst.graph.unit_weights()) throw InvalidInstance("solve_fen needs unit weights");
  if (!inst.alpha.is_zero()) throw InvalidInstance("solve_fen handles exact monitoring only (alpha = 0)");

  SolveResult res;
  res.algorithm = "fen";
  if (feedback) {
    ParameterWitness w;
    w.kind = ParameterKind::FeedbackEdge;
    w.edge_witness = *feedback;
    w.value = static_cast<int>(feedback->size());
    if (!w.validate(inst.graph)) throw InvalidInstance("supplied set is not a feedback edge set");
    res.stats["t_input"] = w.value;
  }

  const int n_input = inst.graph.vertex_count();
  Connectivity conn = ensure_connected(inst.graph, inst.terminals);
  Graph base = conn.graph;

  PeelState st;
  st.alive.assign(base.vertex_count(), 1);
  st.pairs.insert(inst.terminals.begin(), inst.terminals.end());
  st.k = inst.k;
  peel_degree_one(base, st);

  auto stripped = [&](ElementSet s) {
    std::erase_if(s, [&](int v) { return v >= n_input; });
    return s;
  };
  auto finish_trivial = [&]() {
    res.stats["forced"] = static_cast<long long>(st.forced.size());
    if (st.k < 0) {
      res.yes = false;
    } else {
      res.yes = true;
      res.certificate = stripped(st.forced);
    }
    res.stats["early_exit"] = 1;
    return res;
  };
  if (st.k < 0 || st.pairs.empty()) return finish_trivial();

  auto live_degree = [&](int v) {
    int d = 0;
    for (auto [u, w] : base.neighbors(v))
      if (st.alive[u]) ++d;
    return d;
  };
  bool has_high = false;
  for (int v = 0; v < base.vertex_count() && !has_high; ++v)
    if (st.alive[v] && live_degree(v) >= 3) has_high = true;
  if (!has_high) {
    // The residual is a bare cycle: hang a 4-clique off its smallest vertex so
    // the decomposition has a non-empty core. The clique adds no terminal
    // shortest paths, so its vertices never help a certificate.
    int anchor = -1;
    for (int v = 0; v < base.vertex_count() && anchor == -1; ++v)
      if (st.alive[v]) anchor = v;
    int z[4];
    for (int& zi : z) zi = base.add_vertex();
    st.alive.resize(base.vertex_count(), 1);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) base.add_edge(z[i], z[j]);
    base.add_edge(anchor, z[0]);
    peel_degree_one(base, st);
    if (st.k < 0 || st.pairs.empty()) return finish_trivial();
  }

  FenContext cx;
  cx.input_vertices = n_input;
  cx.forced = st.forced;
  std::vector<int> newid;
  cx.work.graph = compact_alive(base, st.alive, newid, cx.orig);
  for (const auto& [u, v] : st.pairs) cx.work.terminals.push_back({newid[u], newid[v]});
  cx.work.k = st.k;
  for (const auto& [u, v] : cx.work.terminals)
    if (cx.orig[u] >= n_input || cx.orig[v] >= n_input)
      throw InternalError("solve_fen: terminal pair on a helper vertex");

  cx.dec = decompose(cx.work.graph);
  cx.apsp.emplace(cx.work.graph);

  std::vector<ElementSet> petal_sets;
  for (const auto& p : cx.dec.petals) petal_sets.push_back(make_set(p));
  std::vector<std::vector<ElementSet>> local(cx.dec.petals.size());
  for (const auto& [x, y] : cx.work.terminals) {
    ElementSet sp = cx.apsp->sp(x, y);
    for (std::size_t j = 0; j < petal_sets.size(); ++j)
      if (set_subset(sp, petal_sets[j])) {
        local[j].push_back(sp);
        break;
      }
  }
  long long opt_sum = 0;
  for (std::size_t j = 0; j < cx.dec.petals.size(); ++j) {
    cx.opt.push_back(opt_d(cx.dec.petals[j], local[j]));
    opt_sum += cx.opt.back();
  }

  for (std::size_t i = 0; i < cx.dec.high.size(); ++i)
    if (cx.orig[cx.dec.high[i]] < n_input) cx.guess_high.push_back(static_cast<int>(i));

  const long long t = cx.work.graph.edge_count() - cx.work.graph.vertex_count() + 1;
  res.stats["t"] = t;
  res.stats["high_vertices"] = static_cast<long long>(cx.dec.high.size());
  res.stats["petals"] = static_cast<long long>(cx.dec.petals.size());
  res.stats["forced"] = static_cast<long long>(st.forced.size());
  res.stats["opt_sum"] = opt_sum;

  const std::size_t guess_bits = cx.guess_high.size() + cx.dec.petals.size();
  if (guess_bits > 40) throw CapExceeded("solve_fen: " + std::to_string(guess_bits) + " guess bits");
  const unsigned long long total = 1ull << guess_bits;
  if (5 * t < 62 && total > (1ull << (5 * t))) throw InternalError("solve_fen: guess bound violated");
  res.stats["guesses_total"] = static_cast<long long>(total);

  auto finish = [&](unsigned long long guess, ElementSet cert) {
    res.yes = true;
    if (static_cast<long long>(cert.size()) > inst.k)
      throw InternalError("solve_fen: certificate over budget");
    res.certificate = std::move(cert);
    res.stats["winning_guess"] = static_cast<long long>(guess);
    return res;
  };

  if (opts.jobs <= 1) {
    for (unsigned long long guess = 0; guess < total; ++guess)
      if (auto cert = try_fen_guess(cx, guess)) return finish(guess, std::move(*cert));
    res.yes = false;
    return res;
  }

  // Workers scan contiguous ranges and record their first event (success or
  // exception); the lowest event index reproduces the sequential outcome.
  const int workers = opts.jobs;
  const unsigned long long chunk = (total + workers - 1) / workers;
  std::vector<unsigned long long> event_at(workers, total);
  std::vector<std::optional<ElementSet>> event_cert(workers);
  std::vector<std::exception_ptr> event_err(workers);
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w]() {
      const unsigned long long lo = std::min<unsigned long long>(total, w * chunk);
      const unsigned long long hi = std::min<unsigned long long>(total, lo + chunk);
      for (unsigned long long guess = lo; guess < hi; ++guess) {
        try {
          auto cert = try_fen_guess(cx, guess);
          if (!cert) continue;
          event_cert[w] = std::move(cert);
        } catch (...) {
          event_err[w] = std::current_exception();
        }
        event_at[w] = guess;
        break;
      }
    });
  for (auto& th : threads) th.join();
  int best = 0;
  for (int w = 1; w < workers; ++w)
    if (event_at[w] < event_at[best]) best = w;
  if (event_at[best] < total) {
    if (event_err[best]) std::rethrow_exception(event_err[best]);
    return finish(event_at[best], std::move(*event_cert[best]));
  }
  res.yes = false;
  return res;
}

}  // namespace tms
