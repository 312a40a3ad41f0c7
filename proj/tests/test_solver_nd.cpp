#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "tms/errors.hpp"
#include "tms/oracle.hpp"
#include "tms/solver_nd.hpp"

using namespace tms;
using namespace tms::testing;

TEST_CASE("buckets group terminal pairs by neighborhood class") {
  Graph g = star_graph(5);  // classes: {0} and the leaves {1..5}
  NdBuckets nb = nd_buckets(g, {{1, 2}, {0, 3}, {2, 4}});
  REQUIRE(nb.classes.size() == 2);
  CHECK(nb.classes[0] == std::vector<int>{0});
  CHECK(nb.classes[1] == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(nb.class_of[0] == 0);
  CHECK(nb.class_of[4] == 1);
  REQUIRE(nb.buckets.size() == 2);
  CHECK(nb.buckets.at({0, 1}) == std::vector<std::pair<int, int>>{{0, 3}});
  CHECK(nb.buckets.at({1, 1}) == std::vector<std::pair<int, int>>{{1, 2}, {2, 4}});
  CHECK_THROWS_AS(nd_buckets(g, {{2, 2}}), InvalidInstance);
}

TEST_CASE("bucket reduction caps every bucket at (k+2)^2") {
  Graph g = star_graph(6);
  std::vector<std::pair<int, int>> pairs;
  for (int v = 2; v <= 6; ++v) pairs.emplace_back(1, v);  // five pairs through leaf 1
  NdBuckets nb = nd_buckets(g, pairs);
  AllPairs apsp(g);

  SUBCASE("k = 0: the bound is 4, a star family fires once") {
    long long fires = 0;
    auto out = reduce_nd(apsp, nb, 0, &fires);
    CHECK(fires == 1);
    // The 5-pair star at leaf 1 is core-invariant (all SP sets share {0, 1});
    // rule 1 keeps its k+1 = 1 smallest pair.
    CHECK(out.at({1, 1}) == std::vector<std::pair<int, int>>{{1, 2}});
  }
  SUBCASE("k = 1: the bound is 9, nothing fires") {
    long long fires = 0;
    auto out = reduce_nd(apsp, nb, 1, &fires);
    CHECK(fires == 0);
    CHECK(out.at({1, 1}).size() == 5);
  }
  SUBCASE("a matching family fires when no star is heavy enough") {
    // Disjoint leaf pairs: every vertex sits in one pair, so only the matching
    // branch can assemble a k+2 family.
    Graph big = star_graph(10);
    std::vector<std::pair<int, int>> disj;
    for (int v = 1; v + 1 <= 10; v += 2) disj.emplace_back(v, v + 1);
    NdBuckets nb2 = nd_buckets(big, disj);
    AllPairs a2(big);
    long long fires = 0;
    auto out = reduce_nd(a2, nb2, 0, &fires);
    CHECK(fires == 1);
    // The matching family has k+2 = 2 members; one fire drops 1 of 5 pairs.
    CHECK(out.at({1, 1}).size() == 4);
  }
}

TEST_CASE("a corrupted shortest-path table trips the invariant guard") {
  // Buckets computed on the star; the distance table on a doctored copy with
  // a direct 1-2 edge. SP(1,2) = {1,2} then disagrees with SP(1,x) = {0,1,x},
  // so the candidate family is no longer core-invariant and reduction must
  // refuse to fire rather than silently drop pairs.
  Graph g = star_graph(6);
  std::vector<std::pair<int, int>> pairs;
  for (int v = 2; v <= 6; ++v) pairs.emplace_back(1, v);
  NdBuckets nb = nd_buckets(g, pairs);
  Graph doctored = g;
  doctored.add_edge(1, 2);
  AllPairs bad(doctored);
  CHECK_THROWS_AS(reduce_nd(bad, nb, 0, nullptr), InternalError);
}

TEST_CASE("both modes agree with each other and with brute force") {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    TmsInstance inst = planted_nd_instance(seed);
    CAPTURE(seed);
    SolveResult claim = solve_nd(inst, NdMode::Claim);
    SolveResult kernel = solve_nd(inst, NdMode::Kernel);
    SolveResult bf = brute_force_solve(inst);
    REQUIRE(claim.yes == bf.yes);
    REQUIRE(kernel.yes == bf.yes);
    if (claim.yes) {
      CHECK(verify_certificate(inst, *claim.certificate));
      CHECK(verify_certificate(inst, *kernel.certificate));
      CHECK(claim.certificate->size() == bf.certificate->size());
      CHECK(kernel.certificate->size() == bf.certificate->size());
    }
    CHECK(claim.algorithm == "nd-claim");
    CHECK(kernel.algorithm == "nd-kernel");
    CHECK(claim.stats.at("t") == kernel.stats.at("t"));
  }
}

TEST_CASE("the planted class count upper-bounds the computed diversity") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    TmsInstance inst = planted_nd_instance(seed, 4);
    SolveResult r = solve_nd(inst, NdMode::Claim);
    // The coarsest same-type partition can only merge the planted classes.
    CHECK(r.stats.at("t") <= 4);
    CHECK(r.stats.at("t") >= 1);
  }
}

TEST_CASE("degenerate pairs are forced directly") {
  Graph g = star_graph(3);
  TmsInstance inst = make_instance(std::move(g), {{2, 2}, {1, 3}}, 1);
  SolveResult r = solve_nd(inst, NdMode::Claim);
  CHECK(r.stats.at("degenerate_pairs") == 1);
  CHECK(!r.yes);  // must take 2, which misses the 1-3 path
  inst.k = 2;
  SolveResult r2 = solve_nd(inst, NdMode::Kernel);
  CHECK(r2.yes);
  CHECK(set_contains(*r2.certificate, 2));
  CHECK(verify_certificate(inst, *r2.certificate));
}

TEST_CASE("nd solver preconditions") {
  Graph g(2);
  g.add_edge(0, 1, 2);
  TmsInstance weighted = make_instance(std::move(g), {{0, 1}}, 1);
  CHECK_THROWS_AS(solve_nd(weighted, NdMode::Claim), InvalidInstance);
  TmsInstance relaxed = make_instance(path_graph(3), {{0, 2}}, 1, Rational(1, 2));
  CHECK_THROWS_AS(solve_nd(relaxed, NdMode::Kernel), InvalidInstance);
}

TEST_CASE("disconnected inputs are bridged and still solved exactly") {
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(4, 5);
  TmsInstance inst = make_instance(std::move(g), {{0, 1}, {2, 3}, {4, 5}}, 3);
  SolveResult r = solve_nd(inst, NdMode::Claim);
  CHECK(r.yes == brute_force_solve(inst).yes);
  CHECK(r.yes);
  for (int v : *r.certificate) CHECK(v < 6);
  CHECK(verify_certificate(inst, *r.certificate));
}
