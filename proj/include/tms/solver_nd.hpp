#pragma once

#include "tms/hitting_set.hpp"
#include "tms/instance.hpp"

namespace tms {

enum class NdMode { Kernel, Claim };

// Class-pair buckets of the (non-degenerate) terminal pairs under a
// neighborhood-diversity partition: bucket (i, j), i <= j, holds pairs with
// one endpoint in class i and the other in class j.
struct NdBuckets {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> buckets;
};

NdBuckets nd_buckets(const Graph& g, const std::vector<std::pair<int, int>>& pairs);

// Claim-style reduction: while a bucket holds more than (k+2)^2 pairs, find a
// vertex of degree >= k+2 in the bucket's pair graph (star family) or a
// matching of k+2 pairs, check core-invariance, apply Reduction Rule 1.
// Returns surviving pairs per bucket.
std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> reduce_nd(
    const AllPairs& apsp, const NdBuckets& nb, long long k, long long* rule1_fires = nullptr);

// Decides TMS parameterized by neighborhood diversity. Kernel mode builds a
// CoredFamily per bucket (declared core = intersection of the bucket's SP
// sets) and runs the sunflower kernel with d = 2; claim mode runs reduce_nd.
// Both end in one exact hitting-set DP and return identical verdicts.
SolveResult solve_nd(const TmsInstance& inst, NdMode mode, const SolveOptions& opts = {});

}  // namespace tms
