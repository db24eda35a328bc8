#include "d1lc/transversal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d1lc {

std::vector<int32_t> low_degree_sample(const Graph& g,
                                       std::span<const int32_t> p, double q,
                                       double b, uint64_t seed,
                                       int64_t stage) {
  if (q <= 0 || b <= 0) throw std::invalid_argument("q and b must be positive");
  double prob = std::min(1.0, 1.0 / (2.0 * q));
  std::vector<char> sampled(g.n(), 0);
  std::vector<int32_t> s;
  for (int32_t v : p) {
    StreamRng rng(seed, v, stage, kTagTransversal);
    if (rng.unit() < prob) {
      sampled[v] = 1;
      s.push_back(v);
    }
  }
  double cut = b / q;
  std::vector<int32_t> keep;
  for (int32_t v : s) {
    int64_t deg = 0;
    for (int32_t u : g.neighbors(v)) deg += sampled[u];
    if (double(deg) < cut) keep.push_back(v);
  }
  return keep;
}

TransversalReport transversal(const Graph& h,
                              const std::vector<std::vector<int32_t>>& parts,
                              int m, int64_t delta_bound, uint64_t seed) {
  if (m < 1) throw std::invalid_argument("delta must be 1/m for integer m >= 1");
  TransversalReport rep;
  int64_t delta = delta_bound > 0 ? delta_bound : h.max_degree();
  delta = std::max<int64_t>(delta, 1);

  // q = delta^{1/(m+1)}; when delta is a perfect (m+1)-th power the stage
  // values B_j stay exact integers, so the last threshold B_m/q is exactly 1
  double q = std::pow(double(delta), 1.0 / double(m + 1));
  int64_t root = std::llround(q);
  int64_t pw = 1;
  bool exact = root >= 1;
  for (int i = 0; i < m + 1 && exact; ++i) {
    exact = pw <= delta / root;
    pw *= root;
  }
  if (exact && pw == delta) q = double(root);
  rep.q = q;

  std::vector<int32_t> part_of(h.n(), -1);
  for (size_t i = 0; i < parts.size(); ++i) {
    for (int32_t v : parts[i]) part_of[v] = int32_t(i);
  }

  std::vector<int32_t> pool;
  pool.reserve(size_t(h.n()));
  for (int32_t v = 0; v < h.n(); ++v) pool.push_back(v);
  double b = double(delta);

  for (int j = 1; j <= m + 1; ++j) {
    pool = low_degree_sample(h, pool, q, b, seed, j);
    TransversalStage st;
    st.b = b;
    st.part_sizes.assign(parts.size(), 0);
    for (int32_t v : pool) {
      if (part_of[v] >= 0) ++st.part_sizes[part_of[v]];
    }
    rep.stages.push_back(std::move(st));
    b /= q;
  }

  for (size_t i = 0; i < parts.size(); ++i) {
    if (rep.stages.back().part_sizes[i] == 0) {
      rep.empty_parts.push_back(int32_t(i));
    }
  }

  std::sort(pool.begin(), pool.end());
  std::vector<char> in_pool(h.n(), 0);
  for (int32_t v : pool) in_pool[v] = 1;
  rep.independent = true;
  for (int32_t v : pool) {
    for (int32_t u : h.neighbors(v)) {
      if (in_pool[u]) {
        rep.independent = false;
        break;
      }
    }
    if (!rep.independent) break;
  }
  rep.result = std::move(pool);
  return rep;
}

}  // namespace d1lc
