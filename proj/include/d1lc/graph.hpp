#pragma once
// Static simple undirected graph in CSR form. Node ids are dense 0..n-1,
// adjacency rows are sorted, self-loops and parallel edges are rejected at
// construction.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace d1lc {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Graph {
 public:
  Graph() = default;

  // Takes each undirected edge once, in any order and orientation.
  static Graph from_edges(int32_t n,
                          const std::vector<std::pair<int32_t, int32_t>>& edges);

  int32_t n() const { return n_; }
  int64_t m() const { return m_; }

  std::span<const int32_t> neighbors(int32_t v) const {
    return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
  }
  int32_t degree(int32_t v) const {
    return int32_t(off_[v + 1] - off_[v]);
  }
  bool adjacent(int32_t u, int32_t v) const;
  int32_t max_degree() const;

  // Edges of the original graph once each, u < v.
  std::vector<std::pair<int32_t, int32_t>> edge_list() const;

  // Induced subgraph on `nodes` (need not be sorted, must be distinct).
  // to_sub[old] = new id or -1; sub id order follows sorted old ids.
  Graph induced(std::span<const int32_t> nodes,
                std::vector<int32_t>* to_sub = nullptr,
                std::vector<int32_t>* to_orig = nullptr) const;

 private:
  int32_t n_ = 0;
  int64_t m_ = 0;
  std::vector<int64_t> off_{0};
  std::vector<int32_t> adj_;
};

// Hybrid common-neighbor counter. Nodes with degree above the bitmap
// threshold get a dense bit row so high/high pairs resolve by word AND; all
// other pairs use merge or probe on the sorted adjacency. This keeps
// neighborhood edge counts tractable on near-clique instances where the
// naive merge is quadratic in the clique size per node.
class CommonNeighbors {
 public:
  explicit CommonNeighbors(const Graph& g, int32_t bitmap_min_degree = 1024);

  int64_t count(int32_t u, int32_t v) const;

  // number of edges inside N(v): sum_{u in N(v)} |N(u) cap N(v)| / 2
  int64_t edges_in_neighborhood(int32_t v) const;

 private:
  const Graph& g_;
  int32_t words_ = 0;
  std::vector<int32_t> row_of_;       // node -> bitmap row index or -1
  std::vector<uint64_t> rows_;        // row-major bitmaps
  const uint64_t* row(int32_t v) const {
    int32_t r = row_of_[v];
    return r < 0 ? nullptr : rows_.data() + int64_t(r) * words_;
  }
};

}  // namespace d1lc
