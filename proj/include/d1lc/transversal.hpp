#pragma once
// k-independent transversal on a partitioned graph, built by repeated
// low-degree sampling. Each stage samples the surviving pool and keeps the
// sampled nodes that saw few sampled neighbors; the final stage's threshold
// drops below one neighbor, which forces the output to be independent.

#include <cstdint>
#include <span>
#include <vector>

#include "d1lc/graph.hpp"
#include "d1lc/rng.hpp"

namespace d1lc {

inline constexpr uint64_t kTagTransversal = 6;

// One stage: sample each v in p independently w.p. 1/(2q), keep sampled nodes
// with fewer than b/q sampled neighbors. stage salts the per-node streams so
// repeated calls draw fresh randomness.
std::vector<int32_t> low_degree_sample(const Graph& g,
                                       std::span<const int32_t> p, double q,
                                       double b, uint64_t seed,
                                       int64_t stage = 0);

struct TransversalStage {
  double b = 0;                      // the B value this stage sampled under
  std::vector<int64_t> part_sizes;   // survivors per part after the stage
};

struct TransversalReport {
  std::vector<int32_t> result;       // final pool, sorted by id
  std::vector<TransversalStage> stages;
  std::vector<int32_t> empty_parts;  // parts with no survivor (not fatal)
  bool independent = false;          // exact check of the final pool
  double q = 0;
};

// delta = 1/m. delta_bound is the degree bound the stage schedule is built
// from; it must be at least the true maximum degree of h, and passing a
// conveniently round bound (say a perfect cube) keeps every stage threshold
// an exact integer. delta_bound <= 0 falls back to the true maximum degree.
TransversalReport transversal(const Graph& h,
                              const std::vector<std::vector<int32_t>>& parts,
                              int m, int64_t delta_bound, uint64_t seed);

}  // namespace d1lc
