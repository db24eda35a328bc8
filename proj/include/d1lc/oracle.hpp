#pragma once
// Ground truth for small instances: exhaustive list-coloring search and an
// exact checker for colorings produced by any pipeline. The harness compares
// randomized outcomes against these, never against the pipeline itself.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d1lc/instance.hpp"

namespace d1lc {

// Backtracking search over all proper list colorings; nullopt means the
// instance has none. Nodes are capped (default well past what the harness
// uses) because the search is exponential in the worst case.
std::optional<std::vector<int32_t>> brute_force_solve(const D1lcInstance& inst,
                                                      int32_t max_nodes = 20);

// colors[v] == -1 means uncolored, legal only with allow_uncolored. Any
// other value must sit in v's palette and differ from all colored neighbors.
// On failure, *why names the first offending node or edge.
bool verify_coloring(const D1lcInstance& inst, std::span<const int32_t> colors,
                     bool allow_uncolored = false, std::string* why = nullptr);

}  // namespace d1lc
