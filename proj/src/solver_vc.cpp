#include "tms/solver_vc.hpp"

#include <algorithm>
#include <cassert>
#include <exception>
#include <thread>

#include "tms/errors.hpp"
#include "tms/oracle.hpp"

namespace tms {

CompatibilityMatrix CompatibilityMatrix::from_mask(const std::vector<int>& cover, unsigned long long mask) {
  CompatibilityMatrix m;
  m.cover = cover;
  m.bits.assign(slots(cover.size()), 0);
  for (std::size_t b = 0; b < m.bits.size(); ++b) m.bits[b] = (mask >> b) & 1ull;
  return m;
}

std::optional<MatrixFamilies> build_hs_for_matrix(const TmsInstance& inst, const AllPairs& apsp,
                                                  const CompatibilityMatrix& m) {
  const std::size_t c = m.cover.size();
  std::vector<char> in_cover(inst.graph.vertex_count(), 0);
  for (int v : m.cover) in_cover[v] = 1;

  // S0: vertices the guess forbids (union of SP over matrix-0 cover pairs).
  MatrixFamilies out;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i; j < c; ++j)
      if (m.get(i, j) == 0) out.s0 = set_union(out.s0, apsp.sp(m.cover[i], m.cover[j]));

  // Contradictory guess: a demanded cover pair, or any terminal pair, with
  // nothing left of its SP set.
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i; j < c; ++j)
      if (m.get(i, j) == 1) {
        ElementSet rest = set_minus(apsp.sp(m.cover[i], m.cover[j]), out.s0);
        if (rest.empty()) return std::nullopt;
        out.f1.push_back(std::move(rest));
      }
  std::vector<ElementSet> terminal_sp;
  terminal_sp.reserve(inst.terminals.size());
  for (const auto& [u, v] : inst.terminals) {
    terminal_sp.push_back(apsp.sp(u, v));
    if (set_minus(terminal_sp.back(), out.s0).empty()) return std::nullopt;
  }
  std::sort(out.f1.begin(), out.f1.end());
  out.f1.erase(std::unique(out.f1.begin(), out.f1.end()), out.f1.end());

  // T1: pairs monitored for free once some f1 set is hit. T0: the rest.
  std::vector<std::pair<int, int>> t0;
  for (std::size_t i = 0; i < inst.terminals.size(); ++i) {
    bool covered = false;
    for (const auto& f : out.f1)
      if (set_subset(f, terminal_sp[i])) {
        covered = true;
        break;
      }
    if (!covered) t0.push_back(inst.terminals[i]);
  }

  // RR2: pair {u,v}, u independent, v a cover vertex the guess excludes
  // (m[v,v] = 0): everything of SP(u,v) except u lies in S0, so u is forced.
  auto c0 = [&](int v) {
    if (!in_cover[v]) return false;
    std::size_t i = static_cast<std::size_t>(
        std::lower_bound(m.cover.begin(), m.cover.end(), v) - m.cover.begin());
    return m.get(i, i) == 0;
  };
  std::sort(t0.begin(), t0.end());
  while (true) {
    int forced = -1;
    for (const auto& [u, v] : t0) {
      if (!in_cover[u] && c0(v)) {
        forced = u;
        break;
      }
      if (!in_cover[v] && c0(u)) {
        forced = v;
        break;
      }
    }
    if (forced == -1) break;
    if (set_contains(out.s0, forced)) throw InternalError("RR2 forced vertex is excluded by the guess");
    out.f2.push_back({forced});
    std::erase_if(t0, [&](const std::pair<int, int>& p) {
      return set_contains(apsp.sp(p.first, p.second), forced);
    });
  }
  for (const auto& [u, v] : t0) {
    ElementSet rest = set_minus(make_set({u, v}), out.s0);
    if (rest.empty()) return std::nullopt;  // unreachable per the RR2 analysis; defensive
    out.f2.push_back(std::move(rest));
  }
  std::sort(out.f2.begin(), out.f2.end());
  out.f2.erase(std::unique(out.f2.begin(), out.f2.end()), out.f2.end());
  return out;
}

namespace {

// Runs one guess end to end; nullopt when the guess is rejected or unsolvable
// within budget.
std::optional<SolveResult> try_mask(const TmsInstance& inst, const AllPairs& apsp,
                                    const std::vector<int>& cover, unsigned long long mask,
                                    const SolveOptions& opts) {
  CompatibilityMatrix m = CompatibilityMatrix::from_mask(cover, mask);
  auto fams = build_hs_for_matrix(inst, apsp, m);
  if (!fams) return std::nullopt;
  auto f3 = buss_reduce(fams->f2, inst.k);
  if (!f3) return std::nullopt;
  std::vector<ElementSet> family = fams->f1;
  family.insert(family.end(), f3->begin(), f3->end());
  ElementSet universe;
  for (int v = 0; v < inst.graph.vertex_count(); ++v) universe.push_back(v);
  HittingSetInstance hs(universe, family, inst.k);
  SolveResult dp = hs_solve_dp(hs, opts.dp_family_cap);
  if (!dp.yes) return std::nullopt;
  // Post-hoc check of the guess semantics on the returned set: S intersects
  // SP(u,v) of cover pairs exactly where the matrix says so.
  const ElementSet& s = *dp.certificate;
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (std::size_t j = i; j < cover.size(); ++j) {
      bool hit = !set_intersect(apsp.sp(cover[i], cover[j]), s).empty();
      if (hit != (m.get(i, j) == 1))
        throw InternalError("certificate contradicts its compatibility matrix");
    }
  return dp;
}

}  // namespace

SolveResult solve_vc(const TmsInstance& inst, std::optional<std::vector<int>> cover, const SolveOptions& opts) {
  inst.validate();
  if (!inst.alpha.is_zero()) throw InvalidInstance("solve_vc handles exact monitoring only (alpha = 0)");
  Connectivity conn = ensure_connected(inst.graph, inst.terminals);

  std::vector<int> c;
  if (cover) {
    c = make_set(*cover);
    if (conn.hub) c = set_union(c, {*conn.hub});
    if (!is_vertex_cover(conn.graph, c)) throw InvalidInstance("supplied set is not a vertex cover");
    if (static_cast<int>(c.size()) > opts.vc_cover_cap)
      throw CapExceeded("vertex cover of " + std::to_string(c.size()) + " exceeds cover cap " +
                        std::to_string(opts.vc_cover_cap));
  } else {
    c = compute_parameter(conn.graph, ParameterKind::VertexCover, opts.vc_cover_cap).vertices;
  }

  TmsInstance work;
  work.graph = conn.graph;
  work.terminals = inst.terminals;
  work.k = inst.k;

  SolveResult res;
  res.algorithm = "vc";
  res.stats["cover_size"] = static_cast<long long>(c.size());

  // k >= |C|: the cover plus the degenerate-pair vertices monitor everything
  // (every nondegenerate SP set contains a covered edge endpoint).
  {
    ElementSet trivial = c;
    if (conn.hub) trivial = set_minus(trivial, {*conn.hub});
    for (const auto& [u, v] : inst.terminals)
      if (u == v) trivial = set_union(trivial, {u});
    if (static_cast<long long>(trivial.size()) <= inst.k) {
      res.yes = true;
      res.certificate = trivial;
      res.stats["early_exit"] = 1;
      return res;
    }
  }

  AllPairs apsp(work.graph);
  const std::size_t slots = CompatibilityMatrix::slots(c.size());
  const unsigned long long total = 1ull << slots;
  res.stats["guesses_total"] = static_cast<long long>(total);

  auto finish = [&](unsigned long long mask, SolveResult dp) {
    res.yes = true;
    ElementSet cert = *dp.certificate;
    if (conn.hub) cert = set_minus(cert, {*conn.hub});  // hub monitors no terminal pair
    res.certificate = std::move(cert);
    res.stats["winning_mask"] = static_cast<long long>(mask);
    res.stats["family_size"] = dp.stats["family_size"];
    return res;
  };

  if (opts.jobs <= 1) {
    for (unsigned long long mask = 0; mask < total; ++mask)
      if (auto dp = try_mask(work, apsp, c, mask, opts)) return finish(mask, std::move(*dp));
    res.yes = false;
    return res;
  }

  // Each worker scans a contiguous mask range and records its first event
  // (success or exception); the globally lowest event mask decides, which
  // reproduces the sequential scan byte for byte.
  const int workers = opts.jobs;
  const unsigned long long chunk = (total + workers - 1) / workers;
  std::vector<unsigned long long> event_mask(workers, total);
  std::vector<std::exception_ptr> event_err(workers);
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t)
    threads.emplace_back([&, t]() {
      const unsigned long long lo = std::min<unsigned long long>(total, t * chunk);
      const unsigned long long hi = std::min<unsigned long long>(total, lo + chunk);
      for (unsigned long long mask = lo; mask < hi; ++mask) {
        try {
          if (!try_mask(work, apsp, c, mask, opts)) continue;
        } catch (...) {
          event_err[t] = std::current_exception();
        }
        event_mask[t] = mask;
        break;
      }
    });
  for (auto& th : threads) th.join();
  int best_t = -1;
  for (int t = 0; t < workers; ++t)
    if (best_t == -1 || event_mask[t] < event_mask[best_t]) best_t = t;
  if (event_mask[best_t] < total) {
    if (event_err[best_t]) std::rethrow_exception(event_err[best_t]);
    return finish(event_mask[best_t], *try_mask(work, apsp, c, event_mask[best_t], opts));
  }
  res.yes = false;
  return res;
}

}  // namespace tms
