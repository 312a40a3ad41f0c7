#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "tms/errors.hpp"
#include "tms/instance.hpp"

using namespace tms;
using namespace tms::testing;

TEST_CASE("rationals reduce and reject bad values") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational());
  CHECK(Rational(6, 3).num == 2);
  CHECK(Rational(6, 3).den == 1);
  CHECK(Rational().is_zero());
  CHECK_THROWS_AS(Rational(1, 0), InvalidInstance);
  CHECK_THROWS_AS(Rational(-1, 2), InvalidInstance);
}

TEST_CASE("instance validation") {
  TmsInstance inst;
  inst.graph = path_graph(3);
  inst.terminals = {{0, 2}, {1, 1}};
  inst.k = 1;
  CHECK_NOTHROW(inst.validate());

  SUBCASE("negative budget") {
    inst.k = -1;
    CHECK_THROWS_AS(inst.validate(), InvalidInstance);
  }
  SUBCASE("vertex out of range") {
    inst.terminals = {{0, 3}};
    CHECK_THROWS_AS(inst.validate(), InvalidInstance);
  }
  SUBCASE("unnormalized pair") {
    inst.terminals = {{2, 0}};
    CHECK_THROWS_AS(inst.validate(), InvalidInstance);
  }
  SUBCASE("duplicate pair") {
    inst.terminals = {{0, 2}, {0, 2}};
    CHECK_THROWS_AS(inst.validate(), InvalidInstance);
  }
  SUBCASE("pair across components") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    inst.graph = g;
    inst.terminals = {{1, 2}};
    CHECK_THROWS_AS(inst.validate(), InvalidInstance);
  }
}

TEST_CASE("parse reads the documented format") {
  const std::string text =
      "c a comment\n"
      "\n"
      "p tms 4 3 2\n"
      "e 1 2\n"
      "e 2 3 5\n"
      "e 3 4\n"
      "t 4 1\n"
      "t 2 2\n"
      "k 2\n"
      "a 2 4\n";
  TmsInstance inst = parse_instance(text);
  CHECK(inst.graph.vertex_count() == 4);
  CHECK(inst.graph.edge_count() == 3);
  CHECK(inst.graph.edge_weight(1, 2) == 5);
  CHECK(inst.terminals == std::vector<std::pair<int, int>>{{0, 3}, {1, 1}});  // normalized, 0-based
  CHECK(inst.k == 2);
  CHECK(inst.alpha == Rational(1, 2));
}

TEST_CASE("parse rejects malformed text with 1-based line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("e 1 2\np tms 2 1 0\nk 0\n") == 1);          // header not first
  CHECK(line_of("p tms 2 1 0\np tms 2 1 0\n") == 2);          // duplicate header
  CHECK(line_of("p tms 2 1 0\ne 1 3\nk 0\n") == 2);           // endpoint out of range
  CHECK(line_of("p tms 2 1 0\ne 1 1\nk 0\n") == 2);           // self-loop
  CHECK(line_of("p tms 2 2 0\ne 1 2\ne 2 1\nk 0\n") == 3);    // parallel edge
  CHECK(line_of("p tms 2 1 0\ne 1 2 0\nk 0\n") == 2);         // nonpositive weight
  CHECK(line_of("p tms 2 1 0\ne 1 2\nt 0 1\nk 0\n") == 3);    // terminal out of range
  CHECK(line_of("p tms 2 0 0\nk 1\nk 1\n") == 3);             // duplicate k
  CHECK(line_of("p tms 2 0 0\nk 1\na 1 0\n") == 3);           // alpha with zero denominator
  CHECK(line_of("p tms 2 0 0\nx 1\nk 0\n") == 2);             // unknown tag
  CHECK(line_of("p tms 2 0 0\n") > 0);                        // missing k line
  CHECK(line_of("c only a comment\n") > 0);                   // missing header
  CHECK(line_of("p tms 2 0 0\nk\n") == 2);                    // missing value
}

TEST_CASE("parse cross-checks header counts and semantic validity") {
  CHECK_THROWS_AS(parse_instance("p tms 2 1 0\nk 0\n"), InvalidInstance);            // edge count off
  CHECK_THROWS_AS(parse_instance("p tms 2 0 1\nk 0\n"), InvalidInstance);            // terminal count off
  CHECK_THROWS_AS(parse_instance("p tms 2 0 2\nt 1 1\nt 1 1\nk 0\n"), InvalidInstance);  // duplicate pair
  CHECK_THROWS_AS(parse_instance("p tms 3 1 1\ne 1 2\nt 1 3\nk 0\n"), InvalidInstance);  // cross-component
}

TEST_CASE("write emits canonical text and round-trips") {
  TmsInstance inst;
  {
    Graph g(4);
    g.add_edge(2, 0, 3);
    g.add_edge(1, 0);
    g.add_edge(3, 2);
    inst.graph = g;
  }
  inst.terminals = {{1, 3}, {0, 0}};
  inst.k = 1;
  inst.alpha = Rational(1, 3);
  const std::string text = write_instance(inst);
  CHECK(text ==
        "p tms 4 3 2\n"
        "e 1 2\n"
        "e 1 3 3\n"
        "e 3 4\n"
        "t 1 1\n"
        "t 2 4\n"
        "k 1\n"
        "a 1 3\n");

  TmsInstance back = parse_instance(text);
  CHECK(back.graph.edges() == inst.graph.edges());
  CHECK(back.graph.edge_weight(0, 2) == 3);
  CHECK(back.terminals == std::vector<std::pair<int, int>>{{0, 0}, {1, 3}});
  CHECK(back.alpha == inst.alpha);
  CHECK(write_instance(back) == text);  // canonical fixed point

  SUBCASE("alpha zero omits the a line") {
    inst.alpha = Rational();
    CHECK(write_instance(inst).find("\na ") == std::string::npos);
  }
}

TEST_CASE("round-trip holds on random instances") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomSpec spec;
    spec.n = 3 + static_cast<int>(seed % 8);
    spec.edge_prob = 0.3 + 0.05 * static_cast<double>(seed % 10);
    spec.num_terminals = static_cast<int>(seed % 5);
    spec.k = static_cast<long long>(seed % 4);
    spec.weight_max = (seed % 2) ? 1 : 4;
    spec.seed = seed;
    TmsInstance inst = gen_random(spec);
    TmsInstance back = parse_instance(write_instance(inst));
    CHECK(back.graph.edges() == inst.graph.edges());
    CHECK(back.terminals == inst.terminals);
    CHECK(back.k == inst.k);
    CHECK(back.alpha == inst.alpha);
    for (auto [u, v] : inst.graph.edges()) CHECK(back.graph.edge_weight(u, v) == inst.graph.edge_weight(u, v));
  }
}

TEST_CASE("gen_random is deterministic and respects its spec") {
  RandomSpec spec;
  spec.n = 7;
  spec.edge_prob = 0.4;
  spec.num_terminals = 4;
  spec.k = 2;
  spec.weight_max = 3;
  spec.seed = 99;
  TmsInstance a = gen_random(spec);
  TmsInstance b = gen_random(spec);
  CHECK(write_instance(a) == write_instance(b));
  CHECK(a.terminals.size() == 4);
  CHECK(a.k == 2);
  // Pairs are drawn over the original vertices even when a hub was appended.
  for (auto [u, v] : a.terminals) CHECK(v < 7);
  spec.seed = 100;
  CHECK(write_instance(gen_random(spec)) != write_instance(a));

  SUBCASE("bad specs are rejected") {
    RandomSpec bad = spec;
    bad.n = 0;
    CHECK_THROWS_AS(gen_random(bad), InvalidInstance);
    bad = spec;
    bad.edge_prob = 1.5;
    CHECK_THROWS_AS(gen_random(bad), InvalidInstance);
    bad = spec;
    bad.weight_min = 3;
    bad.weight_max = 2;
    CHECK_THROWS_AS(gen_random(bad), InvalidInstance);
    bad = spec;
    bad.num_terminals = 1000;
    CHECK_THROWS_AS(gen_random(bad), InvalidInstance);
  }
}

TEST_CASE("solve results serialize with stable key order") {
  SolveResult r;
  r.yes = true;
  r.certificate = std::vector<int>{2, 5};
  r.algorithm = "demo";
  r.stats["zeta"] = 1;
  r.stats["alpha"] = 2;
  CHECK(r.to_json() ==
        R"({"algorithm":"demo","certificate":[2,5],"stats":{"alpha":2,"zeta":1},"verdict":"YES"})");
  SolveResult no;
  no.algorithm = "demo";
  CHECK(no.to_json() == R"({"algorithm":"demo","certificate":null,"stats":{},"verdict":"NO"})");
}
