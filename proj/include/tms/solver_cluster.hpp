#pragma once

#include <array>
#include <optional>

#include "tms/hitting_set.hpp"
#include "tms/instance.hpp"

namespace tms {

// Four-way split of the non-degenerate terminal pairs relative to a cluster
// deletion set M (G - M is a disjoint union of cliques):
//   t0: pairs that are edges of G          (SP = the two endpoints)
//   t1: non-edges, one endpoint in M
//   t2: non-edges, both endpoints in cliques
//   t3: non-edges, both endpoints in M
struct TerminalPartition {
  std::vector<std::pair<int, int>> t0, t1, t2, t3;
  std::vector<int> modulator;                // sorted
  std::vector<std::vector<int>> cliques;     // components of G - M, each sorted
  std::vector<int> clique_of;                // vertex -> clique index, -1 on M
};

// Requires alpha = 0, unit weights, and that modulator is a cluster deletion
// set. Degenerate pairs {v,v} are not classified here (callers peel them off
// into singleton demands first).
TerminalPartition partition_terminals(const TmsInstance& inst, const std::vector<int>& modulator);

// Realized type of a t2 pair (u,v), written ascending: all (x,i,y,j) in
// M x {1,2} x M x {1,2} with d(u,x) = i, d(y,v) = j, d(x,y) + i + j = d(u,v).
// Each kept tuple is witnessed by an actual shortest path, so this is the
// minimal covering tuple set.
std::vector<std::array<int, 4>> pair_type(const AllPairs& apsp, const TerminalPartition& part,
                                          std::pair<int, int> pair);

// Realized type of a t1 pair oriented (clique vertex u, modulator vertex m):
// all (x,i) in M x {1,2} with d(u,x) = i and i + d(x,m) = d(u,m).
std::vector<std::array<int, 2>> pair_type_t1(const AllPairs& apsp, const TerminalPartition& part,
                                             std::pair<int, int> pair);

// True iff the SP sets of the pairs have one common pairwise intersection
// (the family core). Vacuously true for fewer than two pairs.
bool is_core_invariant(const AllPairs& apsp, const std::vector<std::pair<int, int>>& pairs);

// Counters reported through SolveResult::stats.
struct ClusterReduceStats {
  long long rule1_fires = 0;
  long long pairs_removed = 0;
};

// Shrink t2 until, per realized type X, the distinct clique pairs carrying X
// number <= (2(k+2))^3 and every clique pair keeps <= (2(k+2))^2 pairs of that
// type. Every extracted candidate family is checked by is_core_invariant
// before Reduction Rule 1 fires (keep k+1 pairs, drop the rest of the family);
// a failed check raises InternalError.
std::vector<std::pair<int, int>> reduce_t2(const AllPairs& apsp, const TerminalPartition& part,
                                           long long k, ClusterReduceStats* stats = nullptr);

// Shrink t1 until, per type and modulator vertex, <= k+1 cliques carry the
// type and each (clique, modulator vertex, type) bucket keeps <= k+1 pairs.
std::vector<std::pair<int, int>> reduce_t1(const AllPairs& apsp, const TerminalPartition& part,
                                           long long k, ClusterReduceStats* stats = nullptr);

// Decides TMS parameterized by cluster deletion set size: partition, reduce t2
// and t1, Buss-reduce the t0 edge pairs (plus degenerate singleton demands),
// then one exact hitting-set DP over the surviving SP sets.
SolveResult solve_cluster(const TmsInstance& inst, std::optional<std::vector<int>> modulator = std::nullopt,
                          const SolveOptions& opts = {});

}  // namespace tms
