#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "d1lc/gen.hpp"
#include "d1lc/graph.hpp"
#include "d1lc/transversal.hpp"

using namespace d1lc;

namespace {

std::vector<std::vector<int32_t>> block_parts(int32_t parts, int32_t part_n) {
  std::vector<std::vector<int32_t>> out(parts);
  for (int32_t i = 0; i < parts; ++i) {
    out[i].resize(part_n);
    std::iota(out[i].begin(), out[i].end(), i * part_n);
  }
  return out;
}

bool is_independent(const Graph& g, const std::vector<int32_t>& set) {
  std::vector<char> in(g.n(), 0);
  for (int32_t v : set) in[v] = 1;
  for (int32_t v : set) {
    for (int32_t u : g.neighbors(v)) {
      if (in[u]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("perfect-power degree bounds give an exact stage schedule") {
  // max degree <= 7 * 8 = 56, so 64 is a legal (and cube) bound at m = 2
  Graph h = multipartite_matchings(8, 80, 8, 5);
  REQUIRE(h.max_degree() <= 64);
  auto parts = block_parts(8, 80);

  for (uint64_t seed = 0; seed < 20; ++seed) {
    TransversalReport rep = transversal(h, parts, 2, 64, seed);
    CHECK(rep.q == 4.0);
    REQUIRE(rep.stages.size() == 3);
    CHECK(rep.stages[0].b == 64.0);
    CHECK(rep.stages[1].b == 16.0);
    CHECK(rep.stages[2].b == 4.0);
    // the last threshold is exactly one sampled neighbor, so the surviving
    // pool is independent by construction, not by luck
    CHECK(rep.independent);
    CHECK(is_independent(h, rep.result));
    CHECK(std::is_sorted(rep.result.begin(), rep.result.end()));

    // final-stage part sizes are the result's split, and empty parts match
    for (size_t i = 0; i < parts.size(); ++i) {
      int64_t count = 0;
      for (int32_t v : rep.result) {
        count += v >= int32_t(i) * 80 && v < int32_t(i + 1) * 80;
      }
      CHECK(count == rep.stages.back().part_sizes[i]);
      bool listed = std::find(rep.empty_parts.begin(), rep.empty_parts.end(),
                              int32_t(i)) != rep.empty_parts.end();
      CHECK(listed == (count == 0));
    }
  }
}

TEST_CASE("the root snapping recognizes exact powers") {
  Graph h = Graph::from_edges(4, {{0, 1}, {2, 3}});
  auto parts = block_parts(2, 2);
  CHECK(transversal(h, parts, 2, 27, 3).q == 3.0);
  CHECK(transversal(h, parts, 2, 1000, 3).q == 10.0);
  CHECK(transversal(h, parts, 1, 1000000, 3).q == 1000.0);
  CHECK(transversal(h, parts, 2, 64, 3).q == 4.0);
}

TEST_CASE("the first stage is an exact replay of low-degree sampling") {
  Graph h = multipartite_matchings(4, 100, 4, 7);
  auto parts = block_parts(4, 100);
  const uint64_t seed = 11;
  TransversalReport rep = transversal(h, parts, 2, 64, seed);

  std::vector<int32_t> pool(h.n());
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int32_t> replay = low_degree_sample(h, pool, 4.0, 64.0, seed, 1);
  std::vector<int64_t> sizes(4, 0);
  for (int32_t v : replay) ++sizes[v / 100];
  CHECK(sizes == rep.stages[0].part_sizes);
}

TEST_CASE("an edgeless pool just thins by the sampling rate") {
  Graph h = Graph::from_edges(1024, {});
  auto parts = block_parts(4, 256);
  TransversalReport rep = transversal(h, parts, 1, 0, 9);
  // true max degree 0 is clamped to 1, so q = 1 and every stage keeps a
  // sampled node with certainty; two stages leave about a quarter
  CHECK(rep.q == 1.0);
  REQUIRE(rep.stages.size() == 2);
  CHECK(rep.stages[0].b == 1.0);
  CHECK(rep.independent);
  int64_t total = int64_t(rep.result.size());
  CHECK(total > 150);
  CHECK(total < 400);
}

TEST_CASE("low-degree sampling keeps everyone under a slack threshold") {
  Graph g = gnp(200, 10, 3);
  std::vector<int32_t> p(g.n());
  std::iota(p.begin(), p.end(), 0);
  // q = 1/2 pushes the sampling probability to 1 and the cut past any degree
  std::vector<int32_t> keep = low_degree_sample(g, p, 0.5, 1e9, 4, 0);
  CHECK(keep == p);
}

TEST_CASE("a unit cut turns one sampling stage into an independent set") {
  Graph g = gnp(200, 10, 3);
  std::vector<int32_t> p(g.n());
  std::iota(p.begin(), p.end(), 0);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<int32_t> keep = low_degree_sample(g, p, 2.0, 2.0, seed, 0);
    CHECK(is_independent(g, keep));
    CHECK(std::includes(p.begin(), p.end(), keep.begin(), keep.end()));
  }
}

TEST_CASE("sampling stages are salted apart and reproducible") {
  Graph g = gnp(200, 10, 3);
  std::vector<int32_t> p(g.n());
  std::iota(p.begin(), p.end(), 0);
  auto a = low_degree_sample(g, p, 2.0, 1e9, 7, 0);
  auto b = low_degree_sample(g, p, 2.0, 1e9, 7, 0);
  auto c = low_degree_sample(g, p, 2.0, 1e9, 7, 1);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("parameter validation") {
  Graph g = Graph::from_edges(2, {{0, 1}});
  std::vector<int32_t> p{0, 1};
  CHECK_THROWS_AS(low_degree_sample(g, p, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(low_degree_sample(g, p, 1.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(low_degree_sample(g, p, -2.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(transversal(g, {{0}, {1}}, 0, 4, 1), std::invalid_argument);
}

TEST_CASE("an empty part is reported, not fatal") {
  Graph h = Graph::from_edges(4, {{0, 1}, {2, 3}});
  std::vector<std::vector<int32_t>> parts{{0, 1, 2, 3}, {}};
  TransversalReport rep = transversal(h, parts, 2, 64, 2);
  CHECK(std::find(rep.empty_parts.begin(), rep.empty_parts.end(), 1) !=
        rep.empty_parts.end());
}
