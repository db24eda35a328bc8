#pragma once
// Palette sparsification: sample a small list from each palette, keep only the
// edges whose endpoint lists intersect, and color from the sampled lists. The
// guarantee is probabilistic, so a run can fail; failure is returned as data
// (the stuck nodes) and the harness aggregates success rates.

#include <cstdint>
#include <vector>

#include "d1lc/coloring.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/ledger.hpp"

namespace d1lc {

inline constexpr uint64_t kTagSparsify = 7;

struct SampledLists {
  int64_t ell = 0;  // target list size, min(ell, |palette|) per node
  std::vector<std::vector<int32_t>> lists;  // sorted, subset of the palette
};

// ell = ceil(c_s * ln^2 n), each list a uniform sample without replacement
SampledLists sample_lists(const D1lcInstance& inst, double c_s, uint64_t seed);

// subgraph of the instance edges keeping uv iff L(u) and L(v) intersect
Graph build_conflict_graph(const D1lcInstance& inst, const SampledLists& lists);

// the sparsified run defaults to the unevenness classifier and tolerates
// short leader palettes in the synchronized trial (sampled lists are thin)
inline PipelineOptions sparsify_pipeline_defaults() {
  PipelineOptions p;
  p.variant = ClassifierVariant::Unevenness;
  p.tolerant_sct = true;
  return p;
}

struct SparsifyOptions {
  double low_degree_c = 1.0;  // nodes of degree < c * ln^2 n go last, greedily
  EpsilonLedger eps = EpsilonLedger::desk();
  PipelineOptions pipeline = sparsify_pipeline_defaults();
};

struct SparsifyReport {
  bool success = false;
  std::vector<int32_t> stuck;   // nodes left without a usable sampled color
  std::vector<int32_t> colors;  // per node; -1 when stuck
  int64_t conflict_edges = 0;
  int64_t rounds = 0;
  int64_t conflicts = 0;  // engine conflicts in the sub-state; must be 0
  bool decomposition_fell_back = false;  // tiny regime: plain greedy was used
};

// Classification runs on the original instance; coloring runs on the conflict
// graph with the sampled lists. Start nodes go first, the other high-degree
// sparse nodes next, dense cliques ride the dense pipeline, and low-degree
// nodes finish greedily.
SparsifyReport color_from_samples(const D1lcInstance& inst,
                                  const SampledLists& lists,
                                  const SparsifyOptions& opt, uint64_t seed);

}  // namespace d1lc
