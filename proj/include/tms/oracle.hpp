#pragma once

#include "tms/instance.hpp"

namespace tms {

// True iff |s| <= k and every terminal pair {u,v} has a witness w in s with
// q * (d(u,w) + d(w,v)) <= (q + p) * d(u,v)   for alpha = p/q
// (exact integer comparison; alpha = 0 degenerates to w on a shortest path).
bool verify_certificate(const TmsInstance& inst, const std::vector<int>& s);

// Reference solver: subsets in (size, lexicographic) order, first verifying
// subset wins, so a YES certificate is the lexicographically least among the
// minimum-size solutions. Throws CapExceeded when |V| > vertex_cap.
SolveResult brute_force_solve(const TmsInstance& inst, int vertex_cap = 20, int jobs = 1);

// Per-pair monitor sets: monitors(i) = all w that satisfy the pair condition
// for terminal pair i. Shared by the oracle and by solver tests.
std::vector<ElementSet> pair_monitor_sets(const TmsInstance& inst);

}  // namespace tms
