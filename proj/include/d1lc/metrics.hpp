#pragma once
// Per-node structural metrics: slack, sparsity, disparity, discrepancy,
// unevenness, slackability, and color weights. All rationals are exact;
// threshold comparisons cross-multiply integers, so classification never
// depends on floating point.
//
// Degree-0 nodes get 0 for every normalized metric (nothing to divide by,
// and they color trivially from their nonempty palette).

#include "d1lc/graph.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/rat.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace d1lc {

// zeta_v = (C(d,2) - m(N(v))) / d
Rat sparsity(const Graph& g, const CommonNeighbors& cn, int32_t v);

// |psi_u \ psi_v| as an integer count (both palettes sorted)
int64_t palette_diff_count(const std::vector<int32_t>& pu,
                           const std::vector<int32_t>& pv);

// disparity of u towards v: |psi_u \ psi_v| / |psi_u| (0 if psi_u empty)
Rat disparity(const D1lcInstance& inst, int32_t u, int32_t v);

// Memoizes |psi_u \ psi_v| by interned palette-id pair. One memo per
// instance; worth it when many nodes share palettes.
class DisparityMemo {
 public:
  explicit DisparityMemo(const D1lcInstance& inst) : inst_(inst) {}
  int64_t diff_count(int32_t u, int32_t v);

 private:
  const D1lcInstance& inst_;
  std::unordered_map<uint64_t, int64_t> memo_;
};

// discrepancy of v over S (default S = N(v)): sum of disparities towards v
RatSum discrepancy(const D1lcInstance& inst, int32_t v, DisparityMemo* memo = nullptr);
RatSum discrepancy_over(const D1lcInstance& inst, int32_t v,
                        std::span<const int32_t> S, DisparityMemo* memo = nullptr);

// unevenness of v: sum over N(v) of max(0, d_u - d_v) / (d_u + 1)
RatSum unevenness(const Graph& g, int32_t v);

// color weights over S: H(c) = sum_{u in S, c in psi_u} 1/|psi_u|,
// for every color appearing in some psi_u, u in S. Sorted by color.
std::vector<std::pair<int32_t, RatSum>> color_weights(const D1lcInstance& inst,
                                                      std::span<const int32_t> S);

// static slack of the instance: |psi_v| - d_v (>= 1 when deg+1 holds)
int64_t static_slack(const D1lcInstance& inst, int32_t v);

}  // namespace d1lc
