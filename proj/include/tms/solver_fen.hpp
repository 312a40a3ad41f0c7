#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tms/graph.hpp"
#include "tms/instance.hpp"
#include "tms/util.hpp"

namespace tms {

// Degree-one elimination: a vertex carrying a degenerate pair is its only
// possible monitor and gets forced once its degree drops to <= 1; any other
// degree-one vertex is spliced out with its pairs rewritten onto the unique
// neighbor.
struct FenPreprocessed {
  Graph graph;                                 // residual graph, compact ids
  std::vector<int> orig;                       // residual id -> input vertex id
  std::vector<std::pair<int, int>> terminals;  // residual ids, normalized, deduped
  ElementSet forced;                           // input ids every solution must contain
  long long k = 0;                             // remaining budget, may go negative
};

FenPreprocessed preprocess_degree_one(const TmsInstance& inst);

// Split of a connected min-degree-2 graph into its degree->=3 vertices and the
// path components left after removing them. With c = #edges - #vertices + 1,
// |high| <= 2c and |petals| <= 3c; both are checked.
struct Decomposition {
  std::vector<int> high;                 // degree >= 3 vertices, ascending
  std::vector<std::vector<int>> petals;  // each in path order, lower endpoint first
};

Decomposition decompose(const Graph& g);

// Minimum number of petal vertices stabbing every interval; each interval must
// be a contiguous subpath of the petal, given as a vertex set.
int opt_d(const std::vector<int>& petal, const std::vector<ElementSet>& intervals);

// Flower: core vertex plus vertex-disjoint paths (petals) whose interior never
// touches the core. A solution avoids the core, hits every listed path, and
// meets petal i in exactly budgets[i] vertices.
struct FlowerInstance {
  Graph graph;
  int core = -1;
  std::vector<std::vector<int>> petals;  // path order
  std::vector<ElementSet> paths;
  std::vector<int> budgets;  // aligned with petals, all >= 1
  std::vector<int> orig;     // flower id -> id in the decomposed graph (core -> -1)

  void validate() const;  // throws InternalError on a malformed flower
};

// Builds the flower subproblem for one guess: f_v[i] = 1 selects high[i] into
// the solution, f_d[j] = 1 grants petal j one vertex beyond its local optimum.
// Absent when the guess already exceeds inst.k. apsp/petal_opt may be supplied
// to avoid recomputation; they must describe inst.graph and dec.
std::optional<FlowerInstance> build_hpfb(const TmsInstance& inst, const Decomposition& dec,
                                         const std::vector<char>& f_v, const std::vector<char>& f_d,
                                         const AllPairs* apsp = nullptr,
                                         const std::vector<int>* petal_opt = nullptr);

// Exact-budget flower path hitting; deterministic (prefers low vertex ids).
std::optional<ElementSet> solve_hpfb(const FlowerInstance& fl);

SolveResult solve_fen(const TmsInstance& inst,
                      std::optional<std::vector<std::pair<int, int>>> feedback = std::nullopt,
                      const SolveOptions& opts = {});

}  // namespace tms
