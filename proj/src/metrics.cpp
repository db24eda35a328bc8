#include "d1lc/metrics.hpp"

#include <algorithm>

namespace d1lc {

Rat sparsity(const Graph& g, const CommonNeighbors& cn, int32_t v) {
  int64_t d = g.degree(v);
  if (d == 0) return Rat(0);
  int64_t pairs = d * (d - 1) / 2;
  int64_t present = cn.edges_in_neighborhood(v);
  return Rat(pairs - present, d);
}

int64_t palette_diff_count(const std::vector<int32_t>& pu,
                           const std::vector<int32_t>& pv) {
  // both sorted; count elements of pu missing from pv
  int64_t missing = 0;
  size_t i = 0, j = 0;
  while (i < pu.size()) {
    if (j == pv.size() || pu[i] < pv[j]) {
      ++missing;
      ++i;
    } else if (pu[i] == pv[j]) {
      ++i;
      ++j;
    } else {
      ++j;
    }
  }
  return missing;
}

Rat disparity(const D1lcInstance& inst, int32_t u, int32_t v) {
  const auto& pu = inst.palettes[u];
  if (pu.empty()) return Rat(0);
  return Rat(palette_diff_count(pu, inst.palettes[v]), (long long)pu.size());
}

int64_t DisparityMemo::diff_count(int32_t u, int32_t v) {
  uint64_t key = (uint64_t)(uint32_t)inst_.palette_id[u] << 32 |
                 (uint32_t)inst_.palette_id[v];
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  int64_t d = palette_diff_count(inst_.palettes[u], inst_.palettes[v]);
  memo_.emplace(key, d);
  return d;
}

RatSum discrepancy(const D1lcInstance& inst, int32_t v, DisparityMemo* memo) {
  return discrepancy_over(inst, v, inst.graph.neighbors(v), memo);
}

RatSum discrepancy_over(const D1lcInstance& inst, int32_t v,
                        std::span<const int32_t> S, DisparityMemo* memo) {
  RatSum acc;
  for (int32_t u : S) {
    const auto& pu = inst.palettes[u];
    if (pu.empty()) continue;
    int64_t diff = memo ? memo->diff_count(u, v)
                        : palette_diff_count(pu, inst.palettes[v]);
    if (diff != 0) acc.add((long long)diff, (long long)pu.size());
  }
  return acc;
}

RatSum unevenness(const Graph& g, int32_t v) {
  RatSum acc;
  int64_t dv = g.degree(v);
  for (int32_t u : g.neighbors(v)) {
    int64_t du = g.degree(u);
    if (du > dv) acc.add(du - dv, du + 1);
  }
  return acc;
}

std::vector<std::pair<int32_t, RatSum>> color_weights(const D1lcInstance& inst,
                                                      std::span<const int32_t> S) {
  // accumulate H(c) over all colors seen in palettes of S
  std::unordered_map<int32_t, RatSum> h;
  for (int32_t u : S) {
    const auto& pu = inst.palettes[u];
    if (pu.empty()) continue;
    auto sz = (long long)pu.size();
    for (int32_t c : pu) h[c].add(1, sz);
  }
  std::vector<std::pair<int32_t, RatSum>> out(h.begin(), h.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

int64_t static_slack(const D1lcInstance& inst, int32_t v) {
  return (int64_t)inst.palettes[v].size() - inst.graph.degree(v);
}

}  // namespace d1lc
