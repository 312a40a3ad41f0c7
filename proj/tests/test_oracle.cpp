#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "tms/errors.hpp"
#include "tms/oracle.hpp"

using namespace tms;
using namespace tms::testing;

TEST_CASE("certificate verification checks size, range, and the pair condition") {
  TmsInstance inst = make_instance(path_graph(3), {{0, 2}}, 1);
  CHECK(verify_certificate(inst, {1}));
  CHECK(verify_certificate(inst, {0}));  // endpoints lie on their own shortest paths
  CHECK(verify_certificate(inst, {2}));
  CHECK(!verify_certificate(inst, {}));
  CHECK(!verify_certificate(inst, {0, 1}));  // over budget
  CHECK(verify_certificate(inst, {1, 1}));   // duplicates collapse before the size check
  CHECK_THROWS_AS(verify_certificate(inst, {3}), InvalidInstance);
  CHECK_THROWS_AS(verify_certificate(inst, {-1}), InvalidInstance);
}

TEST_CASE("degenerate pairs are monitored only by their own vertex") {
  TmsInstance inst = make_instance(path_graph(3), {{1, 1}}, 1, Rational(1, 1));
  CHECK(verify_certificate(inst, {1}));
  CHECK(!verify_certificate(inst, {0}));  // even with slack: (1+alpha) * 0 = 0
  CHECK(pair_monitor_sets(inst) == std::vector<ElementSet>{{1}});
}

TEST_CASE("slack admits off-path monitors at the exact threshold") {
  // Path 0-1-2 with a pendant 3 on vertex 1: pair {0,2} has d = 2 and the
  // detour through 3 costs 4, so 3 monitors the pair iff 1 + alpha >= 2.
  Graph g = path_graph(3);
  g.add_vertex();
  g.add_edge(1, 3);
  TmsInstance inst = make_instance(std::move(g), {{0, 2}}, 1);
  CHECK(!verify_certificate(inst, {3}));
  inst.alpha = Rational(1, 2);
  CHECK(!verify_certificate(inst, {3}));
  inst.alpha = Rational(99, 100);
  CHECK(!verify_certificate(inst, {3}));  // 100 * 4 <= 199 * 2 fails
  inst.alpha = Rational(1, 1);
  CHECK(verify_certificate(inst, {3}));  // 1 * 4 <= 2 * 2, exactly tight
  CHECK(pair_monitor_sets(inst) == std::vector<ElementSet>{{0, 1, 2, 3}});
}

TEST_CASE("monitor sets equal shortest-path sets when alpha is zero") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomSpec spec;
    spec.n = 7;
    spec.edge_prob = 0.4;
    spec.num_terminals = 5;
    spec.weight_max = (seed % 2) ? 1 : 3;
    spec.seed = seed;
    TmsInstance inst = gen_random(spec);
    auto sets = pair_monitor_sets(inst);
    REQUIRE(sets.size() == inst.terminals.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      auto [u, v] = inst.terminals[i];
      CHECK(sets[i] == sp_set(inst.graph, u, v));
    }
  }
}

TEST_CASE("monitor sets grow with alpha") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomSpec spec;
    spec.n = 7;
    spec.edge_prob = 0.4;
    spec.num_terminals = 5;
    spec.seed = seed;
    TmsInstance tight = gen_random(spec);
    TmsInstance loose = tight;
    loose.alpha = Rational(1, 2);
    auto a = pair_monitor_sets(tight);
    auto b = pair_monitor_sets(loose);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(set_subset(a[i], b[i]));
  }
}

TEST_CASE("brute force finds minimum solutions and prefers low ids") {
  SUBCASE("star center covers all leaf pairs") {
    TmsInstance inst = make_instance(star_graph(4), {{1, 2}, {1, 3}, {2, 4}}, 1);
    SolveResult r = brute_force_solve(inst);
    CHECK(r.yes);
    CHECK(*r.certificate == std::vector<int>{0});
  }
  SUBCASE("k = 0 works only for empty demands") {
    CHECK(brute_force_solve(make_instance(path_graph(3), {}, 0)).yes);
    CHECK(!brute_force_solve(make_instance(path_graph(3), {{0, 1}}, 0)).yes);
  }
  SUBCASE("ties break lexicographically") {
    // Either endpoint of the edge pair works alone; 0 is reported.
    TmsInstance inst = make_instance(path_graph(2), {{0, 1}}, 1);
    SolveResult r = brute_force_solve(inst);
    CHECK(*r.certificate == std::vector<int>{0});
  }
  SUBCASE("insufficient budget is a NO") {
    // Two far-apart pairs on a long path need two monitors.
    TmsInstance inst = make_instance(path_graph(8), {{0, 1}, {6, 7}}, 1);
    CHECK(!brute_force_solve(inst).yes);
    inst.k = 2;
    SolveResult r = brute_force_solve(inst);
    CHECK(r.yes);
    CHECK(r.certificate->size() == 2);
  }
  SUBCASE("vertex cap refuses large graphs") {
    TmsInstance inst = make_instance(path_graph(21), {{0, 1}}, 1);
    CHECK_THROWS_AS(brute_force_solve(inst), CapExceeded);
    CHECK_NOTHROW(brute_force_solve(inst, 21));
  }
}

TEST_CASE("every brute-force answer passes verification") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    RandomSpec spec;
    spec.n = 3 + static_cast<int>(seed % 6);
    spec.edge_prob = 0.45;
    spec.num_terminals = static_cast<int>(seed % 5);
    spec.k = static_cast<long long>(seed % 3);
    spec.weight_max = (seed % 2) ? 1 : 4;
    spec.seed = seed;
    TmsInstance inst = gen_random(spec);
    if (seed % 3 == 0) inst.alpha = Rational(1, 2);
    SolveResult r = brute_force_solve(inst);
    if (r.yes) {
      CHECK(verify_certificate(inst, *r.certificate));
    } else if (inst.k >= 1) {
      // If it says NO with budget >= 1, no single vertex may monitor everything.
      auto sets = pair_monitor_sets(inst);
      for (int w = 0; w < inst.graph.vertex_count(); ++w) {
        bool all = true;
        for (const auto& m : sets) all = all && set_contains(m, w);
        CHECK(!all);
      }
    }
  }
}

TEST_CASE("parallel brute force matches the sequential bytes") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomSpec spec;
    spec.n = 8;
    spec.edge_prob = 0.35;
    spec.num_terminals = 5;
    spec.k = 2;
    spec.seed = seed;
    TmsInstance inst = gen_random(spec);
    SolveResult seq = brute_force_solve(inst, 20, 1);
    SolveResult par = brute_force_solve(inst, 20, 4);
    CHECK(seq.to_json() == par.to_json());
  }
}
