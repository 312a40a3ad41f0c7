#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tms/graph.hpp"

namespace tms {

// Nonnegative exact rational, kept reduced with den >= 1. alpha = 0 is {0, 1}.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);

  bool is_zero() const { return num == 0; }
  bool operator==(const Rational&) const = default;
};

// Problem instance: find S, |S| <= k, such that for every terminal pair {u,v}
// some w in S has d(u,w) + d(w,v) <= (1 + alpha) * d(u,v). alpha = 0 is the
// exact problem (w on a shortest u-v path).
struct TmsInstance {
  Graph graph;
  std::vector<std::pair<int, int>> terminals;  // normalized u <= v; u == v allowed
  long long k = 0;
  Rational alpha;

  // Checks vertex ranges, pair normalization/duplication, k >= 0, and that
  // every pair lies within one component. Throws InvalidInstance.
  void validate() const;
};

// Uniform result record. stats carry deterministic counters only (no timings),
// so serialization is byte-identical across runs.
struct SolveResult {
  bool yes = false;
  std::optional<std::vector<int>> certificate;  // sorted vertex ids, present iff yes
  std::string algorithm;
  std::map<std::string, long long> stats;

  std::string to_json() const;
};

// Text format (1-indexed vertices):
//   c <comment>
//   p tms <n> <m> <numTerminals>     -- must come first
//   e <u> <v> [w]                    -- default weight 1
//   t <u> <v>                        -- terminal pair, u == v allowed
//   k <K>
//   a <p> <q>                        -- alpha = p/q, optional, default 0
TmsInstance parse_instance(const std::string& text);

// Canonical form: header, sorted e lines (ascending endpoints per line and
// across lines, weight printed only when != 1), sorted t lines, k line,
// a line only when alpha > 0. parse(write(x)) is structurally identical to x.
std::string write_instance(const TmsInstance& inst);

struct RandomSpec {
  int n = 1;
  double edge_prob = 0.5;
  int num_terminals = 0;
  long long k = 0;
  Weight weight_min = 1;
  Weight weight_max = 1;
  std::uint64_t seed = 0;
};

// Seeded generator: G(n, p) with uniform weights, post-processed through
// ensure_connected, then num_terminals distinct unordered pairs (degenerate
// allowed) drawn over the original n vertices. Same seed => same instance.
TmsInstance gen_random(const RandomSpec& spec);

// Shared solver knobs. Caps make refusals explicit (CapExceeded) instead of
// letting exponential phases run away.
struct SolveOptions {
  int jobs = 1;                // worker threads for solver-internal parallelism
  int dp_family_cap = 24;      // hs_solve_dp: max family size
  int brute_vertex_cap = 20;   // brute_force_solve: max vertex count
  int param_branch_cap = 16;   // compute_parameter branching depth
  int vc_cover_cap = 5;        // solve_vc: max cover size to enumerate matrices for
};

}  // namespace tms
