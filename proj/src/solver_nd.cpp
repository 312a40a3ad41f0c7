#include "tms/solver_nd.hpp"

#include <algorithm>
#include <cassert>

#include "tms/errors.hpp"
#include "tms/solver_cluster.hpp"  // is_core_invariant

namespace tms {

namespace {

using Pair = std::pair<int, int>;

// Exact search for a matching of exactly r vertex-disjoint pairs. Only runs on
// residual lists of <= 2(k+2)(k+1) pairs after the greedy pass fell short.
bool exact_matching(const std::vector<Pair>& pairs, std::size_t start, int r, std::vector<Pair>& out) {
  if (r == 0) return true;
  if (pairs.size() - start < static_cast<std::size_t>(r)) return false;
  for (std::size_t i = start; i + r <= pairs.size(); ++i) {
    const Pair& p = pairs[i];
    bool clash = false;
    for (const auto& q : out)
      if (q.first == p.first || q.first == p.second || q.second == p.first || q.second == p.second) {
        clash = true;
        break;
      }
    if (clash) continue;
    out.push_back(p);
    if (exact_matching(pairs, i + 1, r - 1, out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

NdBuckets nd_buckets(const Graph& g, const std::vector<Pair>& pairs) {
  NdBuckets nb;
  ParameterWitness w = compute_parameter(g, ParameterKind::NdPartition);
  nb.classes = w.partition;
  nb.class_of.assign(g.vertex_count(), -1);
  for (std::size_t i = 0; i < nb.classes.size(); ++i)
    for (int v : nb.classes[i]) nb.class_of[v] = static_cast<int>(i);
  for (const auto& p : pairs) {
    if (p.first == p.second) throw InvalidInstance("degenerate pair reached nd_buckets");
    int i = nb.class_of[p.first], j = nb.class_of[p.second];
    nb.buckets[{std::min(i, j), std::max(i, j)}].push_back(p);
  }
  for (auto& [key, lst] : nb.buckets) std::sort(lst.begin(), lst.end());
  return nb;
}

std::map<Pair, std::vector<Pair>> reduce_nd(const AllPairs& apsp, const NdBuckets& nb, long long k,
                                            long long* rule1_fires) {
  const long long k2 = k + 2;
  const long long bound = k2 * k2;
  std::map<Pair, std::vector<Pair>> out;
  for (const auto& [key, bucket_in] : nb.buckets) {
    std::vector<Pair> alive = bucket_in;
    while (static_cast<long long>(alive.size()) > bound) {
      // Star: a vertex contained in >= k+2 of the bucket's pairs.
      std::map<int, std::vector<Pair>> star;
      for (const auto& p : alive) {
        star[p.first].push_back(p);
        star[p.second].push_back(p);
      }
      std::vector<Pair> family;
      for (const auto& [v, lst] : star)
        if (static_cast<long long>(lst.size()) >= k2) {
          family = lst;
          break;
        }
      if (family.empty()) {
        // Matching of k+2 vertex-disjoint pairs: greedy, then exact search
        // (Vizing: it exists when the bucket exceeds (k+2)^2 with all degrees
        // <= k+1; the residual search space is tiny).
        std::vector<Pair> greedy;
        std::vector<int> used;
        for (const auto& p : alive) {
          if (std::find(used.begin(), used.end(), p.first) != used.end()) continue;
          if (std::find(used.begin(), used.end(), p.second) != used.end()) continue;
          greedy.push_back(p);
          used.push_back(p.first);
          used.push_back(p.second);
          if (static_cast<long long>(greedy.size()) >= k2) break;
        }
        if (static_cast<long long>(greedy.size()) >= k2) {
          family = std::move(greedy);
        } else {
          std::vector<Pair> found;
          if (!exact_matching(alive, 0, static_cast<int>(k2), found))
            throw InternalError("guaranteed matching not found in nd bucket");
          family = std::move(found);
        }
      }
      std::sort(family.begin(), family.end());
      if (!is_core_invariant(apsp, family)) throw InternalError("nd reduction family is not core-invariant");
      std::vector<Pair> drop(family.begin() + static_cast<std::ptrdiff_t>(k + 1), family.end());
      std::erase_if(alive, [&](const Pair& p) { return std::binary_search(drop.begin(), drop.end(), p); });
      if (rule1_fires) ++*rule1_fires;
    }
    out[key] = std::move(alive);
  }
  return out;
}

SolveResult solve_nd(const TmsInstance& inst, NdMode mode, const SolveOptions& opts) {
  inst.validate();
  if (!inst.alpha.is_zero()) throw InvalidInstance("solve_nd handles exact monitoring only (alpha = 0)");
  if (!inst.graph.unit_weights()) throw InvalidInstance("solve_nd requires unit edge weights");
  Connectivity conn = ensure_connected(inst.graph, inst.terminals);

  std::vector<ElementSet> singleton_demands;
  std::vector<Pair> pairs;
  for (const auto& p : inst.terminals)
    if (p.first == p.second)
      singleton_demands.push_back({p.first});
    else
      pairs.push_back(p);

  NdBuckets nb = nd_buckets(conn.graph, pairs);
  AllPairs apsp(conn.graph);

  SolveResult res;
  res.algorithm = (mode == NdMode::Kernel) ? "nd-kernel" : "nd-claim";
  res.stats["t"] = static_cast<long long>(nb.classes.size());
  res.stats["buckets"] = static_cast<long long>(nb.buckets.size());
  res.stats["degenerate_pairs"] = static_cast<long long>(singleton_demands.size());

  std::vector<ElementSet> family = singleton_demands;
  if (mode == NdMode::Claim) {
    long long fires = 0;
    auto reduced = reduce_nd(apsp, nb, inst.k, &fires);
    res.stats["rule1_fires"] = fires;
    long long kept = 0;
    for (const auto& [key, lst] : reduced) {
      kept += static_cast<long long>(lst.size());
      for (const auto& [u, v] : lst) family.push_back(apsp.sp(u, v));
    }
    res.stats["pairs_kept"] = kept;
  } else {
    // One CoredFamily per bucket; the declared core is the exact intersection,
    // which contains everything outside V_i ∪ V_j, so stripped sets have size
    // <= 2 and the d = 2 sunflower kernel applies.
    std::vector<CoredFamily> fams;
    for (const auto& [key, lst] : nb.buckets) {
      CoredFamily f;
      for (const auto& [u, v] : lst) f.sets.push_back(apsp.sp(u, v));
      f.core = f.sets.front();
      for (const auto& s : f.sets) f.core = set_intersect(f.core, s);
      fams.push_back(std::move(f));
    }
    auto kerneled = effective_size_kernel(fams, 2, inst.k);
    long long kept = 0;
    for (const auto& f : kerneled) {
      kept += static_cast<long long>(f.sets.size());
      for (const auto& s : f.sets) family.push_back(s);
    }
    res.stats["kernel_sets"] = kept;
  }

  ElementSet universe;
  for (int v = 0; v < conn.graph.vertex_count(); ++v) universe.push_back(v);
  HittingSetInstance hs(universe, family, inst.k);
  SolveResult dp = hs_solve_dp(hs, opts.dp_family_cap);
  res.yes = dp.yes;
  res.certificate = dp.certificate;
  res.stats["family_size"] = dp.stats["family_size"];
  res.stats["optimum"] = dp.stats.count("optimum") ? dp.stats["optimum"] : -1;
  return res;
}

}  // namespace tms
