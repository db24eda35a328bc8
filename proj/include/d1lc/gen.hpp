#pragma once
// Instance generators: plain topologies, palette schemes, and the structured
// families the experiment harness measures. Structured families are built so
// the interesting node lands in a provable class (start, heavy, tough, dense
// inlier, ...) at the intended epsilon profile; the tests freeze those facts.

#include <cstdint>
#include <vector>

#include "d1lc/instance.hpp"

namespace d1lc {

inline constexpr uint64_t kTagGen = 8;

// plain topologies
Graph gnp(int32_t n, double avg_degree, uint64_t seed);
Graph complete_graph(int32_t n);
Graph cycle_graph(int32_t n);
Graph path_graph(int32_t n);
Graph star_graph(int32_t leaves);
Graph union_of_cliques(int32_t k, int32_t count);
// exact d-regular simple graph (configuration model with swap repair)
Graph random_regular(int32_t n, int32_t d, uint64_t seed);
// parts blocks of part_n nodes (node v sits in part v / part_n); each pair of
// parts joined by `matchings` random perfect matchings, duplicates dropped
Graph multipartite_matchings(int32_t parts, int32_t part_n, int32_t matchings,
                             uint64_t seed);

// palette schemes over an arbitrary graph; every list has size deg+1 except
// Identical, which hands everyone the same [0, param) block (param 0 means
// max degree + 1, the smallest legal shared palette)
enum class PaletteScheme {
  Identical,        // same block for all nodes
  DisjointBlocks,   // per-node fresh block, no sharing at all
  Shifted,          // node v gets [v*param, v*param + deg+1): sliding windows
  RandomFromSpace,  // deg+1 colors sampled from [0, param)
};
std::vector<std::vector<int32_t>> make_palettes(const Graph& g,
                                                PaletteScheme scheme,
                                                int64_t param, uint64_t seed);

// apex joined to t disjoint k-cliques; clique i lives on its own (k+1)-color
// block, the apex gets the union of the blocks minus one color from each
// block but the first. The apex never collects more than O(1) slack.
D1lcInstance apex_cliques(int32_t k, int32_t t);

// big clique sharing one palette block; `boosted` low-id members share a
// satellite small-clique (degree boost that crowds the outlier quotas), and
// the node `apex` carries a private small clique on a disjoint block: a dense
// inlier whose slackability is entirely unbalanced sparsity.
D1lcInstance clique_pair(int32_t big, int32_t small, int32_t boosted,
                         int32_t apex);

// apex over `degree` middle nodes of degree mid_degree (apex + private
// leaves); middles share one (mid_degree+1)-color block inside the apex
// palette, so every block color is heavy for the apex
D1lcInstance heavy_apex(int32_t degree, int32_t mid_degree);

// like heavy_apex, but middles additionally form a partner_degree-regular
// graph among themselves and the block is too thin to make colors heavy:
// the apex is light, unbalanced, non-discrepant, with no easy neighbors
D1lcInstance tough_apex(int32_t degree, int32_t mid_degree,
                        int32_t partner_degree, uint64_t seed);

// disjoint k-cliques over one shared base block; node i swaps base color
// i out for a private color (privates shared across clique pairs), giving
// every clique the same small slackability
D1lcInstance perturbed_cliques(int32_t k, int32_t count);

// one n-clique with identical palettes plus sats satellite sat_n-cliques;
// the first `baits` non-leader members get two satellite edges (forcing them
// into the outlier set), the next `mids` get one (inliers with external
// degree 1). Satellites use disjoint per-clique blocks.
D1lcInstance clique_satellites(int32_t n, int32_t baits, int32_t mids,
                               int32_t sats, int32_t sat_n);

// node 0 adjacent to `degree` nodes that form G(degree, nb_prob) among
// themselves, identical palettes: node 0 is sparse and balanced, and all of
// its slackability is balanced sparsity
D1lcInstance planted_balanced(int32_t degree, double nb_prob, uint64_t seed);

}  // namespace d1lc
