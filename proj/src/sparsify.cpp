#include "d1lc/sparsify.hpp"

#include <algorithm>
#include <cmath>

#include "d1lc/acd.hpp"

namespace d1lc {

SampledLists sample_lists(const D1lcInstance& inst, double c_s, uint64_t seed) {
  if (c_s <= 0) throw std::invalid_argument("c_s must be positive");
  const int32_t n = inst.graph.n();
  double ln_n = std::log(double(std::max(n, 2)));
  SampledLists out;
  out.ell = std::max<int64_t>(1, int64_t(std::ceil(c_s * ln_n * ln_n)));
  out.lists.resize(n);
  for (int32_t v = 0; v < n; ++v) {
    const auto& pal = inst.palettes[v];
    if (int64_t(pal.size()) <= out.ell) {
      out.lists[v] = pal;
      continue;
    }
    StreamRng rng(seed, v, 0, kTagSparsify);
    std::vector<int64_t> idx = rng.distinct_indices(out.ell, int64_t(pal.size()));
    auto& list = out.lists[v];
    list.reserve(idx.size());
    for (int64_t i : idx) list.push_back(pal[i]);  // ascending already
  }
  return out;
}

Graph build_conflict_graph(const D1lcInstance& inst,
                           const SampledLists& lists) {
  std::vector<std::pair<int32_t, int32_t>> kept;
  for (auto [u, v] : inst.graph.edge_list()) {
    const auto& a = lists.lists[u];
    const auto& b = lists.lists[v];
    size_t i = 0, j = 0;
    bool hit = false;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) {
        hit = true;
        break;
      }
      if (a[i] < b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    if (hit) kept.push_back({u, v});
  }
  return Graph::from_edges(inst.graph.n(), kept);
}

SparsifyReport color_from_samples(const D1lcInstance& inst,
                                  const SampledLists& lists,
                                  const SparsifyOptions& opt, uint64_t seed) {
  const Graph& g = inst.graph;
  const int32_t n = g.n();
  SparsifyReport rep;

  Graph gc = build_conflict_graph(inst, lists);
  rep.conflict_edges = gc.m();
  D1lcInstance sub = make_instance(std::move(gc), lists.lists,
                                   /*require_deg_plus_one=*/false);
  SimState ss(sub, seed);

  double ln_n = std::log(double(std::max(n, 2)));
  double low_cut = opt.low_degree_c * ln_n * ln_n;
  auto low = [&](int32_t v) { return double(g.degree(v)) < low_cut; };

  // greedy that records stuck nodes instead of throwing
  auto finish = [&](int32_t v) {
    if (ss.status(v) == NodeStatus::Colored) return;
    if (ss.palette_size(v) == 0) {
      rep.stuck.push_back(v);
      return;
    }
    ss.greedy_commit(v);
  };

  AcdPartition part;
  bool have_acd = true;
  try {
    part = compute_acd(g, opt.eps);
  } catch (const DecompositionFailure&) {
    // outside the decomposition's regime (tiny or degenerate graphs); the
    // ordering machinery buys nothing there, so color greedily and report
    have_acd = false;
    rep.decomposition_fell_back = true;
  }

  if (have_acd) {
    SparseClassification cls =
        classify_sparse(inst, part, opt.eps, opt.pipeline.variant);

    std::vector<int32_t> high_sparse;
    for (int32_t v = 0; v < n; ++v) {
      if (part.cls[v] != NodeClass::Dense && !low(v)) high_sparse.push_back(v);
    }
    slack_generation(ss, high_sparse);
    rep.rounds += 1;

    for (int32_t v : high_sparse) {
      if (cls.wave[v] == SparseWave::Start) finish(v);
    }
    for (int32_t v : high_sparse) finish(v);

    if (!part.cliques.empty()) {
      DenseStructure ds = build_dense_structure(inst, part);
      PipelineOptions popt = opt.pipeline;
      popt.tolerant_sct = true;
      PipelineReport dense = dense_pipeline(ss, part, ds, opt.eps, popt);
      rep.rounds += dense.rounds;
    }

    // low-degree nodes and leftovers: the start wave keeps its head start
    for (int32_t v = 0; v < n; ++v) {
      if (part.cls[v] != NodeClass::Dense &&
          cls.wave[v] == SparseWave::Start) {
        finish(v);
      }
    }
  }
  for (int32_t v = 0; v < n; ++v) finish(v);

  rep.colors.assign(n, -1);
  for (int32_t v = 0; v < n; ++v) {
    if (ss.status(v) == NodeStatus::Colored) rep.colors[v] = ss.color(v);
  }
  std::sort(rep.stuck.begin(), rep.stuck.end());
  rep.stuck.erase(std::unique(rep.stuck.begin(), rep.stuck.end()),
                  rep.stuck.end());
  rep.success = rep.stuck.empty();
  rep.conflicts = ss.conflicts_detected();
  return rep;
}

}  // namespace d1lc
