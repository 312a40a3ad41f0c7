#include "tms/solver_cluster.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "tms/errors.hpp"
#include "tms/oracle.hpp"

namespace tms {

namespace {

void require_unit_alpha_zero(const TmsInstance& inst, const char* who) {
  if (!inst.alpha.is_zero()) throw InvalidInstance(std::string(who) + " handles exact monitoring only (alpha = 0)");
  if (!inst.graph.unit_weights()) throw InvalidInstance(std::string(who) + " requires unit edge weights");
}

}  // namespace

TerminalPartition partition_terminals(const TmsInstance& inst, const std::vector<int>& modulator) {
  require_unit_alpha_zero(inst, "partition_terminals");
  TerminalPartition part;
  part.modulator = make_set(modulator);
  if (!is_cluster_deletion_set(inst.graph, part.modulator))
    throw InvalidInstance("modulator is not a cluster deletion set");

  const int n = inst.graph.vertex_count();
  part.clique_of.assign(n, -1);
  std::vector<char> in_m(n, 0);
  for (int v : part.modulator) in_m[v] = 1;
  for (int s = 0; s < n; ++s) {
    if (in_m[s] || part.clique_of[s] != -1) continue;
    int id = static_cast<int>(part.cliques.size());
    part.cliques.emplace_back();
    std::vector<int> stack{s};
    part.clique_of[s] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      part.cliques[id].push_back(u);
      for (const auto& [v, w] : inst.graph.neighbors(u))
        if (!in_m[v] && part.clique_of[v] == -1) {
          part.clique_of[v] = id;
          stack.push_back(v);
        }
    }
    std::sort(part.cliques[id].begin(), part.cliques[id].end());
  }

  for (const auto& [u, v] : inst.terminals) {
    if (u == v) throw InvalidInstance("degenerate pair reached partition_terminals");
    if (inst.graph.has_edge(u, v))
      part.t0.emplace_back(u, v);
    else if (in_m[u] && in_m[v])
      part.t3.emplace_back(u, v);
    else if (in_m[u] || in_m[v])
      part.t1.emplace_back(u, v);
    else
      part.t2.emplace_back(u, v);
  }
  for (auto* lst : {&part.t0, &part.t1, &part.t2, &part.t3}) std::sort(lst->begin(), lst->end());
  return part;
}

std::vector<std::array<int, 4>> pair_type(const AllPairs& apsp, const TerminalPartition& part,
                                          std::pair<int, int> pair) {
  const auto [u, v] = pair;
  const Weight duv = apsp.dist(u, v);
  std::vector<std::array<int, 4>> type;
  for (int x : part.modulator)
    for (int i = 1; i <= 2; ++i) {
      if (apsp.dist(u, x) != i) continue;
      for (int y : part.modulator)
        for (int j = 1; j <= 2; ++j) {
          if (apsp.dist(y, v) != j) continue;
          if (apsp.dist(x, y) + i + j == duv) type.push_back({x, i, y, j});
        }
    }
  return type;  // loop order makes it lexicographically sorted
}

std::vector<std::array<int, 2>> pair_type_t1(const AllPairs& apsp, const TerminalPartition& part,
                                             std::pair<int, int> pair) {
  // Orient with the clique endpoint first.
  int u = pair.first, m = pair.second;
  if (part.clique_of[u] == -1) std::swap(u, m);
  if (part.clique_of[u] == -1 || part.clique_of[m] != -1)
    throw InvalidInstance("pair_type_t1 expects one clique endpoint and one modulator endpoint");
  const Weight dum = apsp.dist(u, m);
  std::vector<std::array<int, 2>> type;
  for (int x : part.modulator)
    for (int i = 1; i <= 2; ++i)
      if (apsp.dist(u, x) == i && i + apsp.dist(x, m) == dum) type.push_back({x, i});
  return type;
}

bool is_core_invariant(const AllPairs& apsp, const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.size() < 2) return true;
  std::vector<ElementSet> sp;
  sp.reserve(pairs.size());
  for (const auto& [u, v] : pairs) sp.push_back(apsp.sp(u, v));
  const ElementSet core = set_intersect(sp[0], sp[1]);
  for (std::size_t i = 0; i < sp.size(); ++i)
    for (std::size_t j = i + 1; j < sp.size(); ++j)
      if (set_intersect(sp[i], sp[j]) != core) return false;
  return true;
}

namespace {

using Pair = std::pair<int, int>;

// Reduction Rule 1: candidate family must be core-invariant and have >= k+2
// pairs; keep its k+1 smallest, erase the rest from `alive`.
void apply_rule1(const AllPairs& apsp, std::vector<Pair>& alive, std::vector<Pair> family, long long k,
                 ClusterReduceStats* stats) {
  std::sort(family.begin(), family.end());
  if (static_cast<long long>(family.size()) < k + 2)
    throw InternalError("reduction family smaller than k+2");
  if (!is_core_invariant(apsp, family))
    throw InternalError("reduction family is not core-invariant");
  std::vector<Pair> drop(family.begin() + static_cast<std::ptrdiff_t>(k + 1), family.end());
  std::erase_if(alive, [&](const Pair& p) { return std::binary_search(drop.begin(), drop.end(), p); });
  if (stats) {
    ++stats->rule1_fires;
    stats->pairs_removed += static_cast<long long>(drop.size());
  }
}

// Greedy maximal matching over pairs, where "vertices" are given by key
// functions; pairs are scanned in sorted order.
template <typename KeyA, typename KeyB>
std::vector<Pair> greedy_matching(const std::vector<Pair>& pairs, KeyA a_of, KeyB b_of) {
  std::vector<Pair> picked;
  std::vector<int> used_a, used_b;
  for (const auto& p : pairs) {
    int a = a_of(p), b = b_of(p);
    if (std::find(used_a.begin(), used_a.end(), a) != used_a.end()) continue;
    if (std::find(used_b.begin(), used_b.end(), b) != used_b.end()) continue;
    picked.push_back(p);
    used_a.push_back(a);
    used_b.push_back(b);
  }
  return picked;
}

}  // namespace

std::vector<Pair> reduce_t2(const AllPairs& apsp, const TerminalPartition& part, long long k,
                            ClusterReduceStats* stats) {
  const long long k2 = k + 2;
  const long long edge_bound = (2 * k2) * (2 * k2) * (2 * k2);
  const long long degree_bound = (2 * k2) * (2 * k2);
  const long long oriented_bucket_bound = 2 * k2 * k2;  // unordered clique pair keeps <= (2(k+2))^2

  std::map<std::vector<std::array<int, 4>>, std::vector<Pair>> groups;
  for (const auto& p : part.t2) groups[pair_type(apsp, part, p)].push_back(p);

  std::vector<Pair> survivors;
  for (auto& [type, alive] : groups) {
    std::sort(alive.begin(), alive.end());

    // Clique-pair-count loop: too many distinct clique pairs carrying this type.
    while (true) {
      std::map<Pair, std::vector<Pair>> by_edge;  // unordered clique pair -> pairs
      for (const auto& p : alive) {
        int cu = part.clique_of[p.first], cv = part.clique_of[p.second];
        by_edge[{std::min(cu, cv), std::max(cu, cv)}].push_back(p);
      }
      if (static_cast<long long>(by_edge.size()) <= edge_bound) break;

      std::map<int, long long> degree;
      for (const auto& [e, lst] : by_edge) {
        ++degree[e.first];
        ++degree[e.second];
      }
      int hub = -1;
      for (const auto& [c, d] : degree)
        if (d >= degree_bound) {
          hub = c;
          break;
        }
      std::vector<Pair> family;
      if (hub >= 0) {
        // One representative pair per incident clique edge, split by the side
        // the hub clique's endpoint is written on, then star or matching.
        std::vector<Pair> b1, b2;
        for (const auto& [e, lst] : by_edge) {
          if (e.first != hub && e.second != hub) continue;
          const Pair& rep = lst.front();  // lists are sorted: deterministic pick
          (part.clique_of[rep.first] == hub ? b1 : b2).push_back(rep);
        }
        std::vector<Pair>& big = (b2.size() > b1.size()) ? b2 : b1;
        const bool hub_first = (&big == &b1);
        auto hub_end = [&](const Pair& p) { return hub_first ? p.first : p.second; };
        auto far_end = [&](const Pair& p) { return hub_first ? p.second : p.first; };
        std::map<int, std::vector<Pair>> star;
        for (const auto& p : big) star[hub_end(p)].push_back(p);
        for (const auto& [w, lst] : star)
          if (static_cast<long long>(lst.size()) >= k2) {
            family = lst;
            break;
          }
        if (family.empty()) family = greedy_matching(big, hub_end, far_end);
      } else {
        // No heavy clique: greedy maximal matching on clique pairs is large.
        std::vector<Pair> matched_reps;
        std::vector<int> used;
        for (const auto& [e, lst] : by_edge) {
          if (std::find(used.begin(), used.end(), e.first) != used.end()) continue;
          if (std::find(used.begin(), used.end(), e.second) != used.end()) continue;
          used.push_back(e.first);
          used.push_back(e.second);
          matched_reps.push_back(lst.front());
          if (static_cast<long long>(matched_reps.size()) >= 2 * k2) break;
        }
        family = std::move(matched_reps);
      }
      apply_rule1(apsp, alive, std::move(family), k, stats);
    }

    // Per-clique-pair loop, keyed by oriented clique pair (pairs are written
    // ascending by vertex id, so orientation is consistent inside a bucket).
    while (true) {
      std::map<Pair, std::vector<Pair>> buckets;  // (clique of u, clique of v) -> pairs
      for (const auto& p : alive)
        buckets[{part.clique_of[p.first], part.clique_of[p.second]}].push_back(p);
      bool fired = false;
      for (auto& [key, bucket] : buckets) {
        if (static_cast<long long>(bucket.size()) <= oriented_bucket_bound) continue;
        std::vector<Pair> family;
        std::map<int, std::vector<Pair>> star_u, star_v;
        for (const auto& p : bucket) {
          star_u[p.first].push_back(p);
          star_v[p.second].push_back(p);
        }
        for (const auto& [w, lst] : star_u)
          if (static_cast<long long>(lst.size()) >= k2) {
            family = lst;
            break;
          }
        if (family.empty())
          for (const auto& [w, lst] : star_v)
            if (static_cast<long long>(lst.size()) >= k2) {
              family = lst;
              break;
            }
        if (family.empty())
          family = greedy_matching(bucket, [](const Pair& p) { return p.first; },
                                   [](const Pair& p) { return p.second; });
        apply_rule1(apsp, alive, std::move(family), k, stats);
        fired = true;
        break;  // bucket map is stale after removal
      }
      if (!fired) break;
    }

    survivors.insert(survivors.end(), alive.begin(), alive.end());
  }
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

std::vector<Pair> reduce_t1(const AllPairs& apsp, const TerminalPartition& part, long long k,
                            ClusterReduceStats* stats) {
  const long long k2 = k + 2;
  std::map<std::vector<std::array<int, 2>>, std::vector<Pair>> groups;
  for (const auto& p : part.t1) groups[pair_type_t1(apsp, part, p)].push_back(p);

  auto m_end = [&](const Pair& p) { return part.clique_of[p.first] == -1 ? p.first : p.second; };
  auto c_end = [&](const Pair& p) { return part.clique_of[p.first] == -1 ? p.second : p.first; };

  std::vector<Pair> survivors;
  for (auto& [type, alive] : groups) {
    std::sort(alive.begin(), alive.end());
    while (true) {
      bool fired = false;
      // Modulator vertex whose type-X pairs reach >= k+2 distinct cliques:
      // one representative pair per clique is a candidate family.
      std::map<int, std::map<int, std::vector<Pair>>> by_m;  // m -> clique -> pairs
      for (const auto& p : alive) by_m[m_end(p)][part.clique_of[c_end(p)]].push_back(p);
      for (const auto& [m, cliques] : by_m)
        if (static_cast<long long>(cliques.size()) >= k2) {
          std::vector<Pair> family;
          for (const auto& [c, lst] : cliques) family.push_back(lst.front());
          apply_rule1(apsp, alive, std::move(family), k, stats);
          fired = true;
          break;
        }
      if (fired) continue;
      // (clique, m) bucket with >= k+2 pairs is itself a candidate family.
      for (const auto& [m, cliques] : by_m) {
        for (const auto& [c, lst] : cliques)
          if (static_cast<long long>(lst.size()) >= k2) {
            apply_rule1(apsp, alive, lst, k, stats);
            fired = true;
            break;
          }
        if (fired) break;
      }
      if (!fired) break;
    }
    survivors.insert(survivors.end(), alive.begin(), alive.end());
  }
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

SolveResult solve_cluster(const TmsInstance& inst, std::optional<std::vector<int>> modulator,
                          const SolveOptions& opts) {
  inst.validate();
  require_unit_alpha_zero(inst, "solve_cluster");
  Connectivity conn = ensure_connected(inst.graph, inst.terminals);

  std::vector<int> m;
  if (modulator) {
    m = make_set(*modulator);
    if (conn.hub) m = set_union(m, {*conn.hub});  // hub joins every clique otherwise
    if (!is_cluster_deletion_set(conn.graph, m))
      throw InvalidInstance("supplied modulator is not a cluster deletion set");
  } else {
    m = compute_parameter(conn.graph, ParameterKind::ClusterDeletion, opts.param_branch_cap).vertices;
  }

  TmsInstance work;
  work.graph = conn.graph;
  work.k = inst.k;
  std::vector<ElementSet> singleton_demands;
  for (const auto& p : inst.terminals)
    if (p.first == p.second)
      singleton_demands.push_back({p.first});  // SP(v,v) = {v}: v is forced
    else
      work.terminals.push_back(p);

  TerminalPartition part = partition_terminals(work, m);
  AllPairs apsp(work.graph);

  ClusterReduceStats rstats;
  auto t2 = reduce_t2(apsp, part, inst.k, &rstats);
  auto t1 = reduce_t1(apsp, part, inst.k, &rstats);

  SolveResult res;
  res.algorithm = "cluster";
  res.stats["q"] = static_cast<long long>(m.size());
  res.stats["t0"] = static_cast<long long>(part.t0.size());
  res.stats["t1"] = static_cast<long long>(part.t1.size());
  res.stats["t2"] = static_cast<long long>(part.t2.size());
  res.stats["t3"] = static_cast<long long>(part.t3.size());
  res.stats["t1_reduced"] = static_cast<long long>(t1.size());
  res.stats["t2_reduced"] = static_cast<long long>(t2.size());
  res.stats["rule1_fires"] = rstats.rule1_fires;
  res.stats["degenerate_pairs"] = static_cast<long long>(singleton_demands.size());

  // t0 pairs are edges: SP = {u, v}, size-2 sets for the Buss reduction,
  // together with the degenerate singleton demands.
  std::vector<ElementSet> small_sets = singleton_demands;
  for (const auto& [u, v] : part.t0) small_sets.push_back({u, v});
  auto reduced_small = buss_reduce(small_sets, inst.k);
  if (!reduced_small) {
    res.yes = false;
    res.stats["buss_no"] = 1;
    return res;
  }
  res.stats["t0_reduced"] = static_cast<long long>(reduced_small->size());

  std::vector<ElementSet> family = *reduced_small;
  for (const auto* lst : {&t1, &t2}) {
    for (const auto& [u, v] : *lst) family.push_back(apsp.sp(u, v));
  }
  for (const auto& [u, v] : part.t3) family.push_back(apsp.sp(u, v));

  ElementSet universe;
  for (int v = 0; v < work.graph.vertex_count(); ++v) universe.push_back(v);
  HittingSetInstance hs(universe, family, inst.k);
  SolveResult dp = hs_solve_dp(hs, opts.dp_family_cap);
  res.yes = dp.yes;
  res.certificate = dp.certificate;  // hub is in no SP set, so never selected
  res.stats["family_size"] = dp.stats["family_size"];
  res.stats["optimum"] = dp.stats.count("optimum") ? dp.stats["optimum"] : -1;
  return res;
}

}  // namespace tms
