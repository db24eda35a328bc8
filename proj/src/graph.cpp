#include "d1lc/graph.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace d1lc {

Graph Graph::from_edges(int32_t n,
                        const std::vector<std::pair<int32_t, int32_t>>& edges) {
  if (n < 0) throw GraphError("negative node count");
  Graph g;
  g.n_ = n;
  g.m_ = int64_t(edges.size());
  std::vector<int64_t> deg(size_t(n) + 1, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " +
                       std::to_string(v));
    }
    if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
    ++deg[size_t(u) + 1];
    ++deg[size_t(v) + 1];
  }
  g.off_.assign(size_t(n) + 1, 0);
  for (int32_t v = 0; v < n; ++v) g.off_[size_t(v) + 1] = g.off_[v] + deg[size_t(v) + 1];
  g.adj_.resize(size_t(g.off_[n]));
  std::vector<int64_t> cur(g.off_.begin(), g.off_.end() - 1);
  for (auto [u, v] : edges) {
    g.adj_[size_t(cur[u]++)] = v;
    g.adj_[size_t(cur[v]++)] = u;
  }
  for (int32_t v = 0; v < n; ++v) {
    auto row = g.adj_.begin() + g.off_[v];
    auto end = g.adj_.begin() + g.off_[v + 1];
    std::sort(row, end);
    if (std::adjacent_find(row, end) != end) {
      throw GraphError("parallel edge at node " + std::to_string(v));
    }
  }
  return g;
}

bool Graph::adjacent(int32_t u, int32_t v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

int32_t Graph::max_degree() const {
  int32_t d = 0;
  for (int32_t v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<std::pair<int32_t, int32_t>> Graph::edge_list() const {
  std::vector<std::pair<int32_t, int32_t>> out;
  out.reserve(size_t(m_));
  for (int32_t v = 0; v < n_; ++v) {
    for (int32_t u : neighbors(v)) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const int32_t> nodes, std::vector<int32_t>* to_sub,
                     std::vector<int32_t>* to_orig) const {
  std::vector<int32_t> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw GraphError("induced subgraph on duplicate nodes");
  }
  std::vector<int32_t> map(size_t(n_), -1);
  for (size_t i = 0; i < sorted.size(); ++i) {
    int32_t v = sorted[i];
    if (v < 0 || v >= n_) throw GraphError("induced subgraph node out of range");
    map[size_t(v)] = int32_t(i);
  }
  std::vector<std::pair<int32_t, int32_t>> edges;
  for (int32_t v : sorted) {
    for (int32_t u : neighbors(v)) {
      if (u > v && map[size_t(u)] >= 0) {
        edges.emplace_back(map[size_t(v)], map[size_t(u)]);
      }
    }
  }
  if (to_sub) *to_sub = std::move(map);
  if (to_orig) *to_orig = std::move(sorted);
  return from_edges(int32_t(nodes.size()), edges);
}

CommonNeighbors::CommonNeighbors(const Graph& g, int32_t bitmap_min_degree)
    : g_(g) {
  words_ = int32_t((int64_t(g.n()) + 63) / 64);
  row_of_.assign(size_t(g.n()), -1);
  int32_t rows = 0;
  for (int32_t v = 0; v < g.n(); ++v) {
    if (g.degree(v) >= bitmap_min_degree) row_of_[size_t(v)] = rows++;
  }
  // Cap the bitmap pool around 1 GiB; above that fall back to merges.
  if (int64_t(rows) * words_ * 8 > (int64_t(1) << 30)) {
    std::fill(row_of_.begin(), row_of_.end(), -1);
    rows = 0;
  }
  rows_.assign(size_t(rows) * size_t(words_), 0);
  for (int32_t v = 0; v < g.n(); ++v) {
    int32_t r = row_of_[size_t(v)];
    if (r < 0) continue;
    uint64_t* bits = rows_.data() + int64_t(r) * words_;
    for (int32_t u : g.neighbors(v)) bits[u >> 6] |= uint64_t(1) << (u & 63);
  }
}

int64_t CommonNeighbors::count(int32_t u, int32_t v) const {
  const uint64_t* ru = row(u);
  const uint64_t* rv = row(v);
  if (ru && rv) {
    int64_t c = 0;
    for (int32_t w = 0; w < words_; ++w) c += std::popcount(ru[w] & rv[w]);
    return c;
  }
  if (ru || rv) {
    // probe the shorter adjacency against the bitmap
    const uint64_t* bits = ru ? ru : rv;
    int32_t probe = ru ? v : u;
    int64_t c = 0;
    for (int32_t w : g_.neighbors(probe)) {
      c += (bits[w >> 6] >> (w & 63)) & 1;
    }
    return c;
  }
  auto a = g_.neighbors(u);
  auto b = g_.neighbors(v);
  int64_t c = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else { ++c; ++i; ++j; }
  }
  return c;
}

int64_t CommonNeighbors::edges_in_neighborhood(int32_t v) const {
  int64_t twice = 0;
  for (int32_t u : g_.neighbors(v)) twice += count(u, v);
  return twice / 2;
}

}  // namespace d1lc
