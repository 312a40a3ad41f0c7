#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tms/instance.hpp"
#include "tms/util.hpp"

namespace tms {

// Hitting set instance: choose <= k universe elements meeting every family
// set. Sets are stored deduplicated and canonically sorted; the constructor
// rejects empty sets (they make the instance trivially unsolvable and always
// indicate a caller bug here).
struct HittingSetInstance {
  ElementSet universe;
  std::vector<ElementSet> family;
  long long k = 0;

  HittingSetInstance(ElementSet universe_, std::vector<ElementSet> family_, long long k_);
};

// Exact solver, DP over family subsets: O(2^|family|). Throws CapExceeded when
// |family| > family_cap. Certificate is a minimum hitting set when yes.
SolveResult hs_solve_dp(const HittingSetInstance& hs, int family_cap = 24);

// Independent oracle: subsets of the universe in (size, lexicographic) order.
// Throws CapExceeded when |universe| > universe_cap.
SolveResult hs_brute_force(const HittingSetInstance& hs, int universe_cap = 20);

// Reduction for families of sets of size <= 2, budget k:
//  - an element in more than k sets is forced: emitted as a singleton, its sets dropped;
//  - if more than k^2 + k distinct sets then remain, the answer is NO (nullopt);
//  - otherwise returns forced singletons + remaining sets.
// (U, f1 ∪ f2, k) and (U, f1 ∪ result, k) are equivalent for any family f1.
std::optional<std::vector<ElementSet>> buss_reduce(const std::vector<ElementSet>& small_sets, long long k);

// A sunflower: members index sets of the queried family whose pairwise
// intersections all equal core (petals core-stripped sets are pairwise disjoint).
struct Sunflower {
  ElementSet core;
  std::vector<std::size_t> members;
};

// Constructive search for a sunflower with `petals` >= 2 petals among distinct
// sets of one common size d. Guaranteed to succeed when the family has more
// than d! * (petals-1)^d sets; below that threshold it may return nullopt.
std::optional<Sunflower> find_sunflower(const std::vector<ElementSet>& family, int petals);

// Family with a declared core contained in every set; the effective size of a
// set is |S \ core|.
struct CoredFamily {
  std::vector<ElementSet> sets;
  ElementSet core;
};

// Sunflower kernel on core-stripped sets, applied per family: while a stripped
// size group of size s keeps more than s! * (k+1)^s sets, find a sunflower with
// k+2 petals and delete one of its sets. Preserves hitting-set equivalence of
// the union of all families at budget k; errors if some |S \ core| > d.
std::vector<CoredFamily> effective_size_kernel(const std::vector<CoredFamily>& families, int d, long long k);

}  // namespace tms
