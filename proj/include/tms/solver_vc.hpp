#pragma once

#include <optional>

#include "tms/hitting_set.hpp"
#include "tms/instance.hpp"

namespace tms {

// Guessed interaction pattern between a solution S and a vertex cover C:
// get(u, v) = 1 means "S must intersect SP(u, v)", 0 means "S avoids SP(u,v)";
// diagonal get(v, v) = 1 means "v in S". Symmetric over cover vertices.
struct CompatibilityMatrix {
  std::vector<int> cover;          // sorted
  std::vector<std::uint8_t> bits;  // upper triangle, row-major over cover indices

  static std::size_t slots(std::size_t c) { return c * (c + 1) / 2; }
  int get(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return bits[i * cover.size() - i * (i + 1) / 2 + j];
  }
  // Matrices are enumerated as mask = 0 .. 2^slots - 1, bit b -> bits[b].
  static CompatibilityMatrix from_mask(const std::vector<int>& cover, unsigned long long mask);
};

// The two hitting-set families a compatible guess induces:
//   f1: SP(u,v) \ S0 for cover pairs with M[u,v] = 1
//   f2: RR2's forced singletons plus {u,v} \ S0 for the surviving T0 pairs
// where S0 is the union of SP over M = 0 cover pairs. nullopt = guess rejected.
struct MatrixFamilies {
  std::vector<ElementSet> f1;
  std::vector<ElementSet> f2;
  ElementSet s0;
};

std::optional<MatrixFamilies> build_hs_for_matrix(const TmsInstance& inst, const AllPairs& apsp,
                                                  const CompatibilityMatrix& m);

// Decides TMS (weighted edges allowed) parameterized by vertex cover size:
// enumerate compatibility matrices, Buss-reduce f2, one hitting-set DP per
// surviving guess; first YES in mask order wins. k >= |C| short-circuits to
// YES. Throws CapExceeded when the cover exceeds opts.vc_cover_cap.
SolveResult solve_vc(const TmsInstance& inst, std::optional<std::vector<int>> cover = std::nullopt,
                     const SolveOptions& opts = {});

}  // namespace tms
