#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tms/instance.hpp"

namespace tms {

// Red-blue domination: choose at most k blue vertices so that every red
// vertex has a chosen neighbor. Blue and red use separate 0-based index
// spaces; every edge goes between a blue and a red vertex, stored (blue, red).
struct RbdsInstance {
  int blue_count = 0;
  int red_count = 0;
  std::vector<std::pair<int, int>> edges;
  long long k = 0;

  // Range-checks endpoints, rejects duplicate edges and negative k.
  void validate() const;
};

// Output of gen_from_rbds. The generated graph lays vertices out as the blue
// block, then the red block, then the twin block; the accessors map source
// indices to generated vertex ids.
struct RbdsReduction {
  bool trivially_no = false;            // some red vertex has no neighbor
  std::optional<TmsInstance> instance;  // present iff !trivially_no
  int blue_count = 0;
  int red_count = 0;

  int blue_vertex(int b) const { return b; }
  int red_vertex(int r) const { return blue_count + r; }
  int twin_vertex(int r) const { return blue_count + red_count + r; }
};

// Domination as monitoring: every red vertex gets a twin wired to the same
// blue neighborhood, and {red, twin} becomes a terminal pair (alpha = 0,
// budget unchanged). The twins are nonadjacent at distance 2, so a vertex
// monitors the pair exactly when it is a common blue neighbor or one of the
// twins themselves, and twin picks can always be pushed back into blue.
// A neighborless red vertex cannot be dominated; its twin pair would span two
// components, so the generator reports trivially_no instead of emitting an
// invalid instance.
RbdsReduction gen_from_rbds(const RbdsInstance& r);

// Reference solver: blue subsets in (size, lexicographic) order; the first
// dominating subset of size <= k wins. Throws CapExceeded when
// blue_count > blue_cap.
std::optional<std::vector<int>> rbds_brute_force(const RbdsInstance& r, int blue_cap = 20);

// Seeded random bipartite generator: each (blue, red) edge appears with
// probability edge_prob. Same seed => same instance.
RbdsInstance gen_random_rbds(int blue, int red, double edge_prob, long long k, std::uint64_t seed);

// Colorful independence: pick exactly one vertex from each part so that no
// two picks are adjacent. Parts must partition the vertices into classes of
// equal odd size.
struct McisInstance {
  Graph graph;
  std::vector<std::vector<int>> parts;

  // Partition and equal-odd-size checks. Throws InvalidInstance.
  void validate() const;
  int classes() const { return static_cast<int>(parts.size()); }
  int class_size() const { return parts.empty() ? 0 : static_cast<int>(parts[0].size()); }
};

// Output of gen_from_mcis: a relaxed-monitoring instance whose solutions are
// forced to encode a colorful independent set.
//
// Layout: vertex 0 is a central bridge. Each part i then contributes one
// block holding a selector path u(i,0..n-1), a mirror path u_prime(i,0..n-1),
// junctions z(i) (mirror front <-> selector back) and z_prime(i) (mirror back
// <-> selector front) closing the two paths into a single cycle, a pendant
// path of length ell_p from tip p(i) to the middle selector u(i,(n-1)/2), and
// a length-ell spoke from every path vertex to the bridge.
//
// The pair {p(i), u(i,(n-1)/2)} forces one pick close to the middle selector
// of every block; the pair {u_prime(i,a), u_prime(j,b)} per cross-part source
// edge {parts[i][a], parts[j][b]} is violated exactly when the picks sit at
// selector indices a and b, so a budget-k solution exists iff the source has
// a colorful independent set. ell and ell_p are calibrated against alpha so
// both forcing arguments are integer-exact.
struct McisReduction {
  TmsInstance instance;
  int k = 0;           // number of parts
  int n = 0;           // part size (odd)
  long long ell = 0;   // spoke length: ceil(n / (2 alpha))
  long long ell_p = 0; // pendant length: ceil((n - 1) / alpha)

  long long block_size() const { return 2 * n + 2 + ell_p + 2 * n * (ell - 1); }
  int base(int i) const { return static_cast<int>(1 + i * block_size()); }

  int bridge() const { return 0; }
  int u(int i, int j) const { return base(i) + j; }
  int u_prime(int i, int j) const { return base(i) + n + j; }
  int z(int i) const { return base(i) + 2 * n; }
  int z_prime(int i) const { return base(i) + 2 * n + 1; }
  int p(int i) const { return base(i) + 2 * n + 2; }
  // Interior pendant vertex at distance step from p(i), step in [1, ell_p).
  int pendant(int i, int step) const { return p(i) + step; }
  // Interior spoke vertex at distance step from u(i,j), step in [1, ell).
  int spoke(int i, int j, int step) const {
    return static_cast<int>(base(i) + 2 * n + 2 + ell_p + j * (ell - 1) + step - 1);
  }
  int spoke_prime(int i, int j, int step) const {
    return static_cast<int>(base(i) + 2 * n + 2 + ell_p + (n + j) * (ell - 1) + step - 1);
  }
};

// Requires 0 < alpha <= 1/2 and part size n odd with n >= 3 (the pendant and
// spoke lengths degenerate below that). Vertex naming is deterministic
// (block-major, role-minor) so generated files are stable. Intra-part source
// edges are ignored: a colorful selection can never pick both endpoints.
McisReduction gen_from_mcis(const McisInstance& m, const Rational& alpha);

// Exhaustive colorful selection in lexicographic order over part positions;
// returns the first independent transversal (as sorted vertex ids) or absent.
// Throws CapExceeded when n^k > 10^6.
std::optional<std::vector<int>> mcis_brute_force(const McisInstance& m);

// Seeded random generator: k parts of odd size n over vertices laid out
// part-major, each cross-part edge appearing with probability edge_prob.
// Same seed => same instance.
McisInstance gen_random_mcis(int k, int n, double edge_prob, std::uint64_t seed);

}  // namespace tms
