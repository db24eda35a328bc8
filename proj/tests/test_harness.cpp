// Harness-level pieces: the instance text format, the brute-force oracle and
// coloring verifier, the binomial non-refutation rule, and the probe registry
// plumbing. The numeric anchors here (0.623046875, the 17-vs-18 failure
// boundary) were computed by hand from the exact binomial sum.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "d1lc/coloring.hpp"
#include "d1lc/gen.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/oracle.hpp"
#include "d1lc/probes.hpp"

#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace d1lc;

namespace {

D1lcInstance load_str(const std::string& text, bool require_d1lc = true) {
  std::istringstream in(text);
  return load_instance(in, require_d1lc);
}

}  // namespace

TEST_CASE("canonical text round-trips byte for byte") {
  std::vector<D1lcInstance> fixtures;
  {
    Graph g = gnp(40, 6.0, 3);
    fixtures.push_back(
        make_instance(g, make_palettes(g, PaletteScheme::RandomFromSpace, 30, 4)));
  }
  {
    Graph g = union_of_cliques(7, 3);
    fixtures.push_back(
        make_instance(g, make_palettes(g, PaletteScheme::Identical, 0, 5)));
  }
  {
    Graph g = star_graph(9);
    fixtures.push_back(
        make_instance(g, make_palettes(g, PaletteScheme::DisjointBlocks, 0, 6)));
  }
  fixtures.push_back(apex_cliques(6, 2));
  fixtures.push_back(make_instance(Graph::from_edges(1, {}), {{5, 9}}));

  for (const auto& inst : fixtures) {
    std::string text = instance_to_string(inst);
    D1lcInstance back = load_str(text, false);
    CHECK(instance_to_string(back) == text);
    CHECK(back.graph.n() == inst.graph.n());
    CHECK(back.graph.m() == inst.graph.m());
    CHECK(back.palettes == inst.palettes);
    CHECK(back.distinct_palettes == inst.distinct_palettes);
  }
}

TEST_CASE("loader canonicalizes scrambled but legal input") {
  // Same instance twice: once through make_instance, once written by hand with
  // comments, blank lines, flipped edge orientation, out-of-order node lines,
  // and an unsorted palette. The emitted text must agree.
  Graph g = Graph::from_edges(3, {{2, 0}, {1, 2}});
  D1lcInstance direct = make_instance(g, {{0, 7}, {3, 1}, {2, 1, 0}});

  std::string scrambled =
      "# hand-written fixture\n"
      "d1lc 3 2\n"
      "\n"
      "node 2 2 1 0   # unsorted on purpose\n"
      "node 0 7 0\n"
      "edge 2 0\n"
      "node 1 3 1\n"
      "edge 1 2\n";
  D1lcInstance loaded = load_str(scrambled);
  CHECK(instance_to_string(loaded) == instance_to_string(direct));
  CHECK(loaded.distinct_palettes == 3);
}

TEST_CASE("empty instance loads and saves") {
  D1lcInstance inst = load_str("d1lc 0 0\n", false);
  CHECK(inst.graph.n() == 0);
  CHECK(instance_to_string(inst) == "d1lc 0 0\n");
}

TEST_CASE("parser pinpoints the offending line") {
  auto reject = [](const std::string& text, const std::string& message) {
    CHECK_THROWS_WITH_AS(load_str(text, false), message.c_str(), ParseError);
  };

  reject("node 0 1\nd1lc 1 0\n", "line 1: node before header");
  reject("d1lc 2 0\nnode 0 0\nd1lc 2 0\n", "line 3: duplicate header");
  reject("d1lc -1 0\n", "line 1: bad header");
  reject("d1lc two 0\n", "line 1: bad header");
  reject("d1lc 1 0 7\n", "line 1: trailing tokens after header");
  reject("d1lc 1 0\nnode 5 0\n", "line 2: bad node id");
  reject("d1lc 1 0\nnode -1 0\n", "line 2: bad node id");
  reject("d1lc 1 0\nnode 0 0\nnode 0 1\n", "line 3: duplicate node 0");
  reject("d1lc 1 0\nnode 0 -3\n", "line 2: color out of range");
  reject("d1lc 1 0\nnode 0 4294967296\n", "line 2: color out of range");
  reject("d1lc 1 0\nnode 0 1 z\n", "line 2: bad color token");
  reject("d1lc 1 0\nnode 0 4 4\n", "line 2: duplicate color in palette of node 0");
  reject("edge 0 1\n", "line 1: edge before header");
  reject("d1lc 2 1\nnode 0 0 1\nnode 1 0 1\nedge 0 9\n",
         "line 4: bad edge endpoints");
  reject("d1lc 2 1\nnode 0 0 1\nnode 1 0 1\nedge 0\n",
         "line 4: bad edge endpoints");
  reject("d1lc 2 1\nnode 0 0 1\nnode 1 0 1\nedge 0 1 3\n",
         "line 4: trailing tokens after edge");
  reject("d1lc 1 0\nvertex 0\n", "line 2: unknown directive 'vertex'");

  // End-of-stream diagnostics carry no line number: nothing specific to blame.
  reject("", "missing 'd1lc <n> <m>' header");
  reject("# only a comment\n", "missing 'd1lc <n> <m>' header");
  reject("d1lc 2 2\nnode 0 0 1\nnode 1 0 1\nedge 0 1\n",
         "header claims 2 edges, found 1");
  reject("d1lc 2 0\nnode 0 0\n", "missing node line for node 1");

  // Comment and blank lines still advance the line counter, so the reported
  // number matches what an editor shows.
  reject("# header next\n\nd1lc 1 0\nnode 0 0\nnode 0 0\n",
         "line 5: duplicate node 0");
}

TEST_CASE("deg+1 requirement is optional but loud") {
  std::string thin =
      "d1lc 2 1\n"
      "node 0 1\n"
      "node 1 1\n"
      "edge 0 1\n";
  CHECK_THROWS_WITH_AS(load_str(thin, true),
                       "node 0 has palette size 1 < degree+1 = 2", ParseError);

  D1lcInstance inst = load_str(thin, false);
  std::string why;
  CHECK_FALSE(inst.deg_plus_one(&why));
  CHECK(why == "node 0 has palette size 1 < degree+1 = 2");

  CHECK_THROWS_AS(make_instance(path_graph(2), {{1}, {1}}), ParseError);
  CHECK(make_instance(path_graph(2), {{1}, {1}}, false).graph.n() == 2);
}

TEST_CASE("shape validation catches hand-built corruption") {
  // make_instance sorts and interning assumes a valid shape, so the broken
  // states below can only arise from direct field writes. validate_shape is
  // the guard the loaders and sub-instance builders lean on.
  D1lcInstance inst;
  inst.graph = path_graph(2);

  inst.palettes = {{0, 1}};
  CHECK_THROWS_WITH_AS(inst.validate_shape(),
                       "palette count does not match node count", ParseError);

  inst.palettes = {{1, 0}, {0, 1}};
  CHECK_THROWS_WITH_AS(inst.validate_shape(), "palette of node 0 not sorted",
                       ParseError);

  inst.palettes = {{0, 0}, {0, 1}};
  CHECK_THROWS_WITH_AS(inst.validate_shape(), "palette of node 0 has duplicates",
                       ParseError);

  inst.palettes = {{0, 1}, {-2, 1}};
  CHECK_THROWS_WITH_AS(inst.validate_shape(),
                       "palette of node 1 has negative color", ParseError);

  inst.palettes = {{0, 1}, {0, 1}};
  CHECK_NOTHROW(inst.validate_shape());
}

TEST_CASE("brute force agrees with hand-checked instances") {
  {
    D1lcInstance k3 = make_instance(complete_graph(3), {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
    auto sol = brute_force_solve(k3);
    REQUIRE(sol.has_value());
    std::string why;
    CHECK(verify_coloring(k3, *sol, false, &why));
    CHECK(why.empty());
  }
  {
    // Two adjacent nodes fighting over the single color 1: unsolvable.
    D1lcInstance p2 = make_instance(path_graph(2), {{1}, {1}}, false);
    CHECK_FALSE(brute_force_solve(p2).has_value());
  }
  {
    // Odd cycle with two shared colors needs a third somewhere.
    Graph c5 = cycle_graph(5);
    std::vector<std::vector<int32_t>> two(5, {0, 1});
    CHECK_FALSE(brute_force_solve(make_instance(c5, two, false)).has_value());
    std::vector<std::vector<int32_t>> three(5, {0, 1, 2});
    CHECK(brute_force_solve(make_instance(c5, three)).has_value());
  }
}

TEST_CASE("brute force refuses oversized instances unless told otherwise") {
  Graph g = gnp(21, 3.0, 1);
  D1lcInstance inst =
      make_instance(g, make_palettes(g, PaletteScheme::DisjointBlocks, 0, 2));
  CHECK_THROWS_WITH_AS(brute_force_solve(inst),
                       "brute_force_solve: instance above node cap",
                       std::invalid_argument);
  auto sol = brute_force_solve(inst, 21);
  REQUIRE(sol.has_value());
  CHECK(verify_coloring(inst, *sol));
}

TEST_CASE("random deg+1 instances are always brute-force solvable") {
  // The greedy argument: with |palette| > degree there is always a free color,
  // so the oracle must find a proper coloring on every draw.
  for (uint64_t seed = 0; seed < 150; ++seed) {
    int32_t n = 2 + int32_t(seed % 8);
    Graph g = gnp(n, 3.0, seed);
    auto pal = make_palettes(g, PaletteScheme::RandomFromSpace, 40, seed + 1);
    D1lcInstance inst = make_instance(g, std::move(pal));
    auto sol = brute_force_solve(inst);
    REQUIRE(sol.has_value());
    std::string why;
    CHECK(verify_coloring(inst, *sol, false, &why));
  }
}

TEST_CASE("coloring verifier pinpoints violations") {
  D1lcInstance k3 = make_instance(complete_graph(3), {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  std::string why;

  std::vector<int32_t> short_vec = {0, 1};
  CHECK_FALSE(verify_coloring(k3, short_vec, false, &why));
  CHECK(why == "color vector size does not match node count");

  std::vector<int32_t> hole = {0, 1, -1};
  CHECK_FALSE(verify_coloring(k3, hole, false, &why));
  CHECK(why == "node 2 is uncolored");
  CHECK(verify_coloring(k3, hole, true, &why));

  std::vector<int32_t> foreign = {0, 1, 5};
  CHECK_FALSE(verify_coloring(k3, foreign, false, &why));
  CHECK(why == "node 2 wears color 5 outside its palette");

  std::vector<int32_t> clash = {0, 1, 0};
  CHECK_FALSE(verify_coloring(k3, clash, false, &why));
  CHECK(why == "edge 0-2 is monochromatic in color 0");

  // Holes never count as monochromatic, even against another hole.
  std::vector<int32_t> holes = {-1, -1, 2};
  CHECK(verify_coloring(k3, holes, true, &why));

  std::vector<int32_t> good = {2, 1, 0};
  why = "stale";
  CHECK(verify_coloring(k3, good, false, &why));
}

TEST_CASE("binomial lower tail is exact where hand-checkable") {
  // P(Bin(10, 1/2) <= 5) = (sum of C(10,k) for k<=5) / 1024 = 638/1024.
  CHECK(binom_lower_tail(10, 0.5, 5) ==
        doctest::Approx(0.623046875).epsilon(1e-12));
  CHECK(binom_lower_tail(5, 0.3, 5) == 1.0);
  CHECK(binom_lower_tail(10, 0.2, -1) == 0.0);
  CHECK(binom_lower_tail(0, 0.7, 0) == 1.0);
  CHECK(binom_lower_tail(10, 1.0, 9) == 0.0);
  CHECK(binom_lower_tail(10, 1.0, 10) == 1.0);
  CHECK(binom_lower_tail(100, 0.9, 80) < binom_lower_tail(100, 0.9, 95));
}

TEST_CASE("non-refutation boundary sits at 17 misses per 1000 at 0.99") {
  double p = 0.0;
  CHECK(statistical_pass(1000, 17, 0.99, &p));
  CHECK(p == doctest::Approx(binom_lower_tail(1000, 0.99, 983)).epsilon(1e-15));
  CHECK(p >= 0.01);

  CHECK_FALSE(statistical_pass(1000, 18, 0.99, &p));
  CHECK(p < 0.01);

  // Degenerate shapes: no trials is vacuous, zero failures always passes.
  CHECK(statistical_pass(0, 0, 0.99));
  CHECK(statistical_pass(50, 0, 0.999999));
}

TEST_CASE("probe registry is frozen") {
  const auto& specs = probe_registry();
  std::vector<std::string> names;
  for (const auto& s : specs) names.push_back(s.name);
  std::vector<std::string> expected = {
      "sparse-slack",    "start-reservoir", "balanced-slack", "heavy-slack",
      "tough-pairs",     "tough-slack",     "dense-slack",    "leader-disparity",
      "synch-residue",   "putaside-size",   "multitrial-rate", "transversal",
  };
  CHECK(names == expected);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  for (const auto& s : specs) {
    CHECK(s.default_trials == 1000);
    CHECK_FALSE(s.claim.empty());
  }
  CHECK_THROWS_WITH_AS(run_probe("nope"), "unknown probe: nope",
                       std::invalid_argument);
}

TEST_CASE("a probe run fills its outcome and is replayable") {
  ProbeOutcome out = run_probe("multitrial-rate", 40, 3);
  CHECK(out.name == "multitrial-rate");
  CHECK_FALSE(out.claim.empty());
  CHECK(out.trials == 40);
  CHECK(out.failures >= 0);
  CHECK(out.failures <= 40);
  CHECK(out.p_value >= 0.0);
  CHECK(out.p_value <= 1.0);
  CHECK(out.conflicts == 0);
  CHECK(out.runs > 0);

  ProbeOutcome again = run_probe("multitrial-rate", 40, 3);
  CHECK(again.failures == out.failures);
  CHECK(again.p_value == out.p_value);
  CHECK(again.runs == out.runs);
}

TEST_CASE("one round only sees the two-hop neighborhood") {
  // Reseeding everything beyond two hops must not change a node's fate in a
  // single synchronous round; any divergence means information traveled
  // further than one message exchange can carry it.
  Graph g = path_graph(9);
  D1lcInstance inst =
      make_instance(g, make_palettes(g, PaletteScheme::Identical, 0, 1));
  auto one_round = [](SimState& s) {
    std::vector<int32_t> all(size_t(s.instance().graph.n()));
    std::iota(all.begin(), all.end(), 0);
    try_random_color_round(s, all);
  };
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto [base, adv] = two_hop_independence_probe(inst, one_round, 4, seed,
                                                  seed * 977 + 13);
    CHECK(base == adv);
  }
}
