#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <vector>

#include "d1lc/gen.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/oracle.hpp"
#include "d1lc/sparsify.hpp"

using namespace d1lc;

namespace {

D1lcInstance identical_gnp(int32_t n, double avg, uint64_t seed) {
  Graph g = gnp(n, avg, seed);
  auto pals = make_palettes(g, PaletteScheme::Identical, 0, 0);
  return make_instance(std::move(g), std::move(pals));
}

}  // namespace

TEST_CASE("sampled list size follows the squared-log rule") {
  // ceil(4 ln^2 1000) = 191
  D1lcInstance inst = identical_gnp(1000, 5, 1);
  CHECK(sample_lists(inst, 4.0, 7).ell == 191);

  // a single node clamps n to 2: ceil(8 ln^2 2) = 4
  D1lcInstance one = make_instance(Graph::from_edges(1, {}),
                                   {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
  CHECK(sample_lists(one, 8.0, 7).ell == 4);
}

TEST_CASE("sampled lists are sorted sublists of the palettes") {
  Graph g = union_of_cliques(60, 3);
  auto pals = make_palettes(g, PaletteScheme::Identical, 0, 0);
  D1lcInstance inst = make_instance(std::move(g), std::move(pals));
  SampledLists ls = sample_lists(inst, 1.0, 3);
  REQUIRE(ls.ell < 60);  // otherwise the test is vacuous
  for (int32_t v = 0; v < inst.graph.n(); ++v) {
    const auto& l = ls.lists[v];
    CHECK(int64_t(l.size()) == ls.ell);
    CHECK(std::is_sorted(l.begin(), l.end()));
    CHECK(std::includes(inst.palettes[v].begin(), inst.palettes[v].end(),
                        l.begin(), l.end()));
  }

  SampledLists again = sample_lists(inst, 1.0, 3);
  CHECK(again.lists == ls.lists);
  SampledLists other = sample_lists(inst, 1.0, 4);
  CHECK(other.lists != ls.lists);
}

TEST_CASE("short palettes are taken whole") {
  D1lcInstance inst = identical_gnp(200, 6, 2);
  SampledLists ls = sample_lists(inst, 1000.0, 1);
  CHECK(ls.lists == inst.palettes);
}

TEST_CASE("the list-size constant must be positive") {
  D1lcInstance inst = identical_gnp(10, 2, 3);
  CHECK_THROWS_AS(sample_lists(inst, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_lists(inst, -4.0, 1), std::invalid_argument);
}

TEST_CASE("each color lands in the sample at the uniform rate") {
  D1lcInstance one = make_instance(Graph::from_edges(1, {}),
                                   {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
  std::array<int, 10> freq{};
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    SampledLists ls = sample_lists(one, 8.0, seed);
    for (int32_t c : ls.lists[0]) ++freq[size_t(c)];
  }
  // 4 of 10 colors per draw: mean 4000, sd ~49, so +-200 is a 4 sigma net
  for (int f : freq) {
    CHECK(f > 3800);
    CHECK(f < 4200);
  }
}

TEST_CASE("the conflict graph keeps exactly the intersecting edges") {
  Graph g = path_graph(3);
  D1lcInstance inst = make_instance(g, {{0, 2}, {0, 1}, {1, 3}});
  SampledLists ls;
  ls.ell = 1;
  ls.lists = {{0}, {0}, {1}};
  Graph gc = build_conflict_graph(inst, ls);
  CHECK(gc.m() == 1);
  CHECK(gc.degree(0) == 1);
  CHECK(gc.degree(2) == 0);

  // identical whole palettes keep every edge
  D1lcInstance inst2 = identical_gnp(100, 8, 4);
  SampledLists full;
  full.ell = 1000;
  full.lists = inst2.palettes;
  CHECK(build_conflict_graph(inst2, full).m() == inst2.graph.m());
}

TEST_CASE("sub-regime instances fall back to greedy and report the stuck node") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  D1lcInstance inst = make_instance(g, {{1, 2}, {1, 3}});
  SampledLists ls;
  ls.ell = 1;
  ls.lists = {{1}, {1}};  // forced collision: someone must get stuck
  SparsifyReport rep = color_from_samples(inst, ls, SparsifyOptions{}, 5);
  CHECK(rep.decomposition_fell_back);
  CHECK(!rep.success);
  CHECK(rep.stuck == std::vector<int32_t>{1});
  CHECK(rep.colors == std::vector<int32_t>{1, -1});
  CHECK(rep.conflict_edges == 1);
  CHECK(rep.conflicts == 0);
}

TEST_CASE("sampled lists color clique unions through the dense pipeline") {
  Graph g = union_of_cliques(300, 2);
  auto pals = make_palettes(g, PaletteScheme::Identical, 0, 0);
  D1lcInstance inst = make_instance(std::move(g), std::move(pals));

  int successes = 0;
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    SampledLists ls = sample_lists(inst, 4.0, seed);
    REQUIRE(ls.ell < 300);  // lists are genuinely sampled
    SparsifyReport rep = color_from_samples(inst, ls, SparsifyOptions{}, seed);
    CHECK(!rep.decomposition_fell_back);
    CHECK(rep.conflicts == 0);
    CHECK(rep.success == rep.stuck.empty());
    if (!rep.success) continue;
    ++successes;
    // the coloring must be proper on the original graph and drawn from the
    // sampled lists, not just from the palettes
    std::string why;
    CHECK(verify_coloring(inst, rep.colors, false, &why));
    CHECK(why.empty());
    for (int32_t v = 0; v < inst.graph.n(); ++v) {
      CHECK(std::binary_search(ls.lists[v].begin(), ls.lists[v].end(),
                               rep.colors[v]));
    }
  }
  // each trial succeeds with high probability; 4 of 6 is a loose floor
  CHECK(successes >= 4);
}

TEST_CASE("a huge low-degree cutoff sends everything to the greedy sweep") {
  D1lcInstance inst = identical_gnp(200, 8, 2);
  SampledLists ls = sample_lists(inst, 1000.0, 1);  // whole palettes
  SparsifyOptions opt;
  opt.low_degree_c = 1e9;
  SparsifyReport rep = color_from_samples(inst, ls, opt, 3);
  CHECK(rep.success);
  CHECK(rep.stuck.empty());
  std::string why;
  CHECK(verify_coloring(inst, rep.colors, false, &why));
  CHECK(why.empty());
}
