#include "tms/oracle.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "tms/errors.hpp"

namespace tms {

namespace {

// Rows from every distinct terminal endpoint; the pair condition only ever
// needs d(u,.) and d(v,.).
std::map<int, DistanceRow> terminal_rows(const TmsInstance& inst) {
  std::map<int, DistanceRow> rows;
  for (const auto& [u, v] : inst.terminals) {
    if (!rows.count(u)) rows.emplace(u, shortest_distances(inst.graph, u));
    if (!rows.count(v)) rows.emplace(v, shortest_distances(inst.graph, v));
  }
  return rows;
}

inline bool monitors(const DistanceRow& from_u, const DistanceRow& from_v, Weight duv, const Rational& alpha,
                     int w) {
  if (!from_u.reachable(w) || !from_v.reachable(w)) return false;
  // q (d(u,w) + d(w,v)) <= (q + p) d(u,v), exact in 128-bit.
  __int128 lhs = static_cast<__int128>(alpha.den) * (from_u.dist[w] + from_v.dist[w]);
  __int128 rhs = static_cast<__int128>(alpha.den + alpha.num) * duv;
  return lhs <= rhs;
}

}  // namespace

std::vector<ElementSet> pair_monitor_sets(const TmsInstance& inst) {
  auto rows = terminal_rows(inst);
  std::vector<ElementSet> out;
  out.reserve(inst.terminals.size());
  for (const auto& [u, v] : inst.terminals) {
    const DistanceRow& ru = rows.at(u);
    const DistanceRow& rv = rows.at(v);
    Weight duv = ru.dist[v];
    if (duv == kUnreachable) throw InvalidInstance("terminal pair spans two components");
    ElementSet m;
    for (int w = 0; w < inst.graph.vertex_count(); ++w)
      if (monitors(ru, rv, duv, inst.alpha, w)) m.push_back(w);
    out.push_back(std::move(m));
  }
  return out;
}

bool verify_certificate(const TmsInstance& inst, const std::vector<int>& s) {
  ElementSet cert = make_set(s);
  for (int w : cert)
    if (w < 0 || w >= inst.graph.vertex_count()) throw InvalidInstance("certificate vertex out of range");
  if (static_cast<long long>(cert.size()) > inst.k) return false;
  auto rows = terminal_rows(inst);
  for (const auto& [u, v] : inst.terminals) {
    const DistanceRow& ru = rows.at(u);
    const DistanceRow& rv = rows.at(v);
    Weight duv = ru.dist[v];
    if (duv == kUnreachable) throw InvalidInstance("terminal pair spans two components");
    bool hit = false;
    for (int w : cert)
      if (monitors(ru, rv, duv, inst.alpha, w)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

SolveResult brute_force_solve(const TmsInstance& inst, int vertex_cap, int jobs) {
  const int n = inst.graph.vertex_count();
  if (n > vertex_cap)
    throw CapExceeded("instance with " + std::to_string(n) + " vertices exceeds brute-force cap " +
                      std::to_string(vertex_cap));
  inst.validate();
  SolveResult res;
  res.algorithm = "bruteforce";
  auto monitor_sets = pair_monitor_sets(inst);
  res.stats["pairs"] = static_cast<long long>(monitor_sets.size());

  auto covered = [&](const std::vector<int>& subset) {
    for (const auto& m : monitor_sets) {
      bool hit = false;
      for (int w : subset)
        if (set_contains(m, w)) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };

  long long tried = 0;
  const int limit = static_cast<int>(std::min<long long>(inst.k, n));
  for (int size = 0; size <= limit; ++size) {
    if (jobs <= 1) {
      std::vector<int> found;
      bool ok = for_each_combination(n, size, [&](const std::vector<int>& idx) {
        ++tried;
        if (!covered(idx)) return false;
        found = idx;
        return true;
      });
      if (ok) {
        res.yes = true;
        res.certificate = std::move(found);
        res.stats["subsets_tried"] = tried;
        return res;
      }
      continue;
    }
    // Parallel: materialize this size's combinations, scan chunks, join on the
    // smallest verifying index so the winner matches the sequential order.
    std::vector<std::vector<int>> combos;
    for_each_combination(n, size, [&](const std::vector<int>& idx) {
      combos.push_back(idx);
      return false;
    });
    tried += static_cast<long long>(combos.size());
    const std::size_t total = combos.size();
    const int workers = std::max(1, jobs);
    std::vector<std::size_t> local_best(workers, total);
    std::vector<std::thread> threads;
    const std::size_t chunk = (total + workers - 1) / std::max<std::size_t>(1, workers);
    for (int t = 0; t < workers; ++t)
      threads.emplace_back([&, t]() {
        const std::size_t lo = std::min(total, t * chunk);
        const std::size_t hi = std::min(total, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i)
          if (covered(combos[i])) {
            local_best[t] = i;
            break;
          }
      });
    for (auto& th : threads) th.join();
    std::size_t best = *std::min_element(local_best.begin(), local_best.end());
    if (best < total) {
      res.yes = true;
      res.certificate = combos[best];
      // Same count a sequential scan would have reported.
      res.stats["subsets_tried"] = tried - static_cast<long long>(total) + static_cast<long long>(best) + 1;
      return res;
    }
  }
  res.yes = false;
  res.stats["subsets_tried"] = tried;
  return res;
}

}  // namespace tms
