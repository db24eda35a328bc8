#include "d1lc/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace d1lc {

namespace {

std::vector<int32_t> filter_uncolored(const SimState& s,
                                      std::span<const int32_t> nodes) {
  std::vector<int32_t> out;
  out.reserve(nodes.size());
  for (int32_t v : nodes) {
    if (s.status(v) == NodeStatus::Uncolored) out.push_back(v);
  }
  return out;
}

int log_star(int64_t x) {
  int k = 0;
  double v = double(x);
  while (v > 1.0) {
    v = std::log2(v);
    ++k;
  }
  return k;
}

int64_t ceil_div(int64_t a, int64_t b) { return (a + b - 1) / b; }

}  // namespace

int64_t try_random_color_round(SimState& s, std::span<const int32_t> active) {
  std::vector<ColorTry> tries;
  tries.reserve(active.size());
  for (int32_t v : active) {
    if (s.status(v) != NodeStatus::Uncolored || s.palette_size(v) == 0) continue;
    StreamRng rng = s.rng(v, kTagPropose);
    tries.push_back({v, s.palette_sample(v, rng), 0});
  }
  if (tries.empty()) return 0;
  return s.run_round(tries);
}

int64_t slack_generation(SimState& s, std::span<const int32_t> active,
                         long long p_num, long long p_den) {
  std::vector<int32_t> joined;
  for (int32_t v : active) {
    if (s.status(v) != NodeStatus::Uncolored) continue;
    if (s.rng(v, kTagSample).chance(p_num, p_den)) joined.push_back(v);
  }
  return try_random_color_round(s, joined);
}

int64_t multi_trial_round(SimState& s, std::span<const int32_t> active,
                          int64_t x) {
  std::vector<SetTry> tries;
  tries.reserve(active.size());
  for (int32_t v : active) {
    if (s.status(v) != NodeStatus::Uncolored || s.palette_size(v) == 0) continue;
    StreamRng rng = s.rng(v, kTagMultiTrial);
    tries.push_back({v, s.palette_sample_distinct(v, x, rng)});
  }
  if (tries.empty()) return 0;
  return s.run_set_round(tries);
}

SlackColorReport slack_color(SimState& s, std::vector<int32_t> active,
                             const SlackColorParams& params) {
  SlackColorReport rep;
  active = filter_uncolored(s, active);
  std::sort(active.begin(), active.end());
  if (active.empty()) return rep;
  const int64_t initial = int64_t(active.size());
  const Graph& g = s.instance().graph;

  std::vector<char> in_active(g.n(), 0);
  for (int32_t v : active) in_active[v] = 1;

  // scoped degree and slack, recomputed at checkpoints
  std::vector<int64_t> d_scope(g.n(), 0), slack(g.n(), 0);
  auto refresh = [&]() {
    for (int32_t v : active) in_active[v] = 0;
    active = filter_uncolored(s, active);
    for (int32_t v : active) in_active[v] = 1;
    for (int32_t v : active) {
      int64_t d = 0;
      for (int32_t u : g.neighbors(v)) d += in_active[u];
      d_scope[v] = d;
      slack[v] = s.palette_size(v) - d;
    }
  };
  // drop (mark Bad) every active node failing pred(v); simultaneous semantics
  auto drop_if = [&](auto pred) {
    std::vector<int32_t> keep;
    keep.reserve(active.size());
    for (int32_t v : active) {
      if (pred(v)) {
        s.mark_bad(v);
        in_active[v] = 0;
        ++rep.failed;
      } else {
        keep.push_back(v);
      }
    }
    active = std::move(keep);
  };

  refresh();
  int64_t beta = params.beta;
  if (params.auto_beta) {
    for (int32_t v : active) {
      beta = std::max(beta, ceil_div(d_scope[v], std::max<int64_t>(1, slack[v])));
    }
    beta = std::min(beta, params.beta_cap);
  }
  rep.beta = beta;
  rep.t0 = int64_t(std::ceil(double(beta) * std::log(4.0 * double(beta))));

  for (int64_t t = 0; t < rep.t0 && !active.empty(); ++t) {
    try_random_color_round(s, active);
    ++rep.rounds;
    active = filter_uncolored(s, active);
  }

  refresh();
  drop_if([&](int32_t v) { return slack[v] < 2 * d_scope[v]; });

  rep.s_min = 2;
  if (!active.empty()) {
    int64_t mn = INT64_MAX;
    for (int32_t v : active) mn = std::min(mn, slack[v]);
    rep.s_min = std::max<int64_t>(2, mn);
  }
  rep.kappa_eff = params.kappa * double(rep.s_min) > 1.0
                      ? params.kappa
                      : std::min(1.0, 2.0 / double(rep.s_min));
  rep.rho = std::max<int64_t>(
      1, int64_t(std::pow(double(rep.s_min), 1.0 / (1.0 + rep.kappa_eff))));
  const int ls = log_star(rep.rho);
  const int64_t n_finish = int64_t(std::ceil(1.0 / rep.kappa_eff));
  rep.bound = rep.t0 + 2 * (ls + 1) + 3 * n_finish + 1;
  const double rho_kappa = std::pow(double(rep.rho), rep.kappa_eff);

  // tower phase: set sizes 1, 2, 4, 16, ...
  uint64_t x = 1;
  for (int i = 0; i <= ls && !active.empty(); ++i) {
    for (int t = 0; t < 2 && !active.empty(); ++t) {
      multi_trial_round(s, active, int64_t(std::min<uint64_t>(x, INT64_MAX)));
      ++rep.rounds;
      active = filter_uncolored(s, active);
    }
    refresh();
    double cut = std::min(x >= 1024 ? HUGE_VAL : std::ldexp(1.0, int(x)),
                          rho_kappa);
    drop_if([&](int32_t v) { return double(d_scope[v]) * cut > double(slack[v]); });
    x = x >= 63 ? UINT64_MAX / 2 : (uint64_t(1) << x);
  }

  // finishing phase: set sizes rho^{i kappa}
  for (int64_t i = 1; i <= n_finish && !active.empty(); ++i) {
    int64_t xi = std::max<int64_t>(
        1, int64_t(std::pow(double(rep.rho), double(i) * rep.kappa_eff)));
    for (int t = 0; t < 3 && !active.empty(); ++t) {
      multi_trial_round(s, active, xi);
      ++rep.rounds;
      active = filter_uncolored(s, active);
    }
    refresh();
    double cut = std::min(
        std::pow(double(rep.rho), double(i + 1) * rep.kappa_eff), double(rep.rho));
    drop_if([&](int32_t v) { return double(d_scope[v]) * cut > double(slack[v]); });
  }

  if (!active.empty()) {
    multi_trial_round(s, active, rep.rho);
    ++rep.rounds;
    active = filter_uncolored(s, active);
  }
  drop_if([](int32_t) { return true; });  // survivors give up

  rep.colored = initial - rep.failed;
  if (rep.rounds > rep.bound) {
    throw EngineError("slack_color exceeded its round budget: " +
                      std::to_string(rep.rounds) + " > " +
                      std::to_string(rep.bound));
  }
  return rep;
}

PutAsideReport put_aside(SimState& s, const AcdPartition& part,
                         const DenseStructure& ds, int64_t ell) {
  PutAsideReport rep;
  const Graph& g = s.instance().graph;
  std::vector<char> sampled(g.n(), 0);
  std::vector<std::pair<int32_t, std::vector<int32_t>>> raw;

  Rat ell_rat(ell);
  for (size_t c = 0; c < part.cliques.size(); ++c) {
    if (!(ds.clique_slackability[c] <= ell_rat)) continue;
    long long num = ell * ell;
    long long den = 48 * ds.clique_max_degree[c];
    std::vector<int32_t> sc;
    for (int32_t u : ds.roles[c].inliers) {
      if (s.status(u) != NodeStatus::Uncolored) continue;
      if (num >= den || s.rng(u, kTagPutAside).chance(num, den)) {
        sampled[u] = 1;
        sc.push_back(u);
      }
    }
    if (!sc.empty()) raw.emplace_back(int32_t(c), std::move(sc));
  }

  std::vector<char> kept(g.n(), 0);
  for (auto& [c, sc] : raw) {
    std::vector<int32_t> pc;
    for (int32_t u : sc) {
      bool clean = true;
      for (int32_t w : g.neighbors(u)) {
        if (sampled[w] && part.cls[w] == NodeClass::Dense &&
            part.clique_id[w] != c) {
          clean = false;
          break;
        }
      }
      if (clean) {
        kept[u] = 1;
        pc.push_back(u);
      }
    }
    if (!pc.empty()) {
      rep.total += int64_t(pc.size());
      rep.clique_ids.push_back(c);
      rep.sets.push_back(std::move(pc));
    }
  }

  // the sets must be pairwise non-adjacent across cliques
  for (size_t i = 0; i < rep.sets.size(); ++i) {
    for (int32_t u : rep.sets[i]) {
      for (int32_t w : g.neighbors(u)) {
        if (kept[w] && part.clique_id[w] != rep.clique_ids[i]) {
          throw EngineError("put-aside sets touch across cliques");
        }
      }
    }
  }
  return rep;
}

SynchTrialReport synch_color_trial(SimState& s, const AcdPartition& part,
                                   const DenseStructure& ds,
                                   std::span<const int32_t> skip,
                                   bool tolerant) {
  SynchTrialReport rep;
  auto skipped = [&](int32_t v) {
    return std::binary_search(skip.begin(), skip.end(), v);
  };

  std::vector<ColorTry> tries;
  std::vector<std::vector<int32_t>> targets_per(part.cliques.size());
  for (size_t c = 0; c < part.cliques.size(); ++c) {
    std::vector<int32_t>& targets = targets_per[c];
    for (int32_t u : ds.roles[c].inliers) {
      if (s.status(u) == NodeStatus::Uncolored && !skipped(u)) {
        targets.push_back(u);
      }
    }
    rep.clique_ids.push_back(int32_t(c));
    rep.attempted.push_back(int64_t(targets.size()));
    if (targets.empty()) continue;

    int32_t x = ds.roles[c].leader;
    std::vector<int32_t> perm = s.palette_values(x);
    StreamRng rng = s.rng(x, kTagSynchTrial);
    rng.shuffle(perm);
    if (perm.size() < targets.size() && !tolerant) {
      throw EngineError("leader palette smaller than its uncolored inliers");
    }
    size_t deal = std::min(perm.size(), targets.size());
    for (size_t i = 0; i < deal; ++i) {
      if (s.palette_contains(targets[i], perm[i])) {
        tries.push_back({targets[i], perm[i], 0});
      }
    }
  }
  if (!tries.empty()) s.run_round(tries);

  rep.decolored.resize(part.cliques.size(), 0);
  for (size_t c = 0; c < part.cliques.size(); ++c) {
    int64_t colored = 0;
    for (int32_t u : targets_per[c]) {
      colored += s.status(u) == NodeStatus::Colored;
    }
    rep.decolored[c] = rep.attempted[c] - colored;
  }
  return rep;
}

namespace {

PhaseStats phase_from(SimState& s, const std::string& name, int64_t r0,
                      int64_t c0, int64_t bad) {
  PhaseStats ps;
  ps.phase = name;
  ps.rounds = s.round() - r0;
  ps.colored = s.commit_count() - c0;
  ps.bad = bad;
  return ps;
}

}  // namespace

PipelineReport sparse_pipeline(SimState& s, const AcdPartition& part,
                               const SparseClassification& cls,
                               const PipelineOptions& opt) {
  PipelineReport rep;
  const int32_t n = s.n();

  std::vector<int32_t> scope;
  for (int32_t v = 0; v < n; ++v) {
    if (s.status(v) != NodeStatus::Uncolored) continue;
    if (part.cls[v] == NodeClass::Sparse || part.cls[v] == NodeClass::Uneven) {
      scope.push_back(v);
    }
  }
  if (scope.empty()) return rep;

  {
    int64_t r0 = s.round(), c0 = s.commit_count();
    slack_generation(s, scope);
    rep.phases.push_back(phase_from(s, "sparse-slackgen", r0, c0, 0));
  }
  {
    std::vector<int32_t> start;
    for (int32_t v : scope) {
      if (cls.wave[v] == SparseWave::Start &&
          s.status(v) == NodeStatus::Uncolored) {
        start.push_back(v);
      }
    }
    int64_t r0 = s.round(), c0 = s.commit_count();
    auto sc = slack_color(s, std::move(start), opt.slack);
    rep.phases.push_back(phase_from(s, "sparse-start", r0, c0, sc.failed));
  }
  {
    std::vector<int32_t> rest;
    for (int32_t v : scope) {
      if (s.status(v) == NodeStatus::Uncolored) rest.push_back(v);
    }
    int64_t r0 = s.round(), c0 = s.commit_count();
    auto sc = slack_color(s, std::move(rest), opt.slack);
    rep.phases.push_back(phase_from(s, "sparse-rest", r0, c0, sc.failed));
  }
  for (const auto& p : rep.phases) {
    rep.rounds += p.rounds;
    rep.bad += p.bad;
  }
  return rep;
}

PipelineReport dense_pipeline(SimState& s, const AcdPartition& part,
                              const DenseStructure& ds,
                              const EpsilonLedger& eps,
                              const PipelineOptions& opt) {
  PipelineReport rep;
  if (part.cliques.empty()) return rep;
  const int32_t n = s.n();

  auto dense_uncolored = [&]() {
    std::vector<int32_t> out;
    for (int32_t v = 0; v < n; ++v) {
      if (s.status(v) == NodeStatus::Uncolored &&
          part.cls[v] == NodeClass::Dense) {
        out.push_back(v);
      }
    }
    return out;
  };

  if (!opt.skip_dense_slackgen) {
    int64_t r0 = s.round(), c0 = s.commit_count();
    slack_generation(s, dense_uncolored());
    rep.phases.push_back(phase_from(s, "dense-slackgen", r0, c0, 0));
  }

  int64_t ell = eps.ell(s.instance().graph.max_degree());
  PutAsideReport pa = put_aside(s, part, ds, ell);
  std::vector<int32_t> skip;
  for (const auto& set : pa.sets) skip.insert(skip.end(), set.begin(), set.end());
  std::sort(skip.begin(), skip.end());

  {
    std::vector<int32_t> outliers;
    for (const auto& roles : ds.roles) {
      for (int32_t v : roles.outliers) {
        if (s.status(v) == NodeStatus::Uncolored) outliers.push_back(v);
      }
    }
    int64_t r0 = s.round(), c0 = s.commit_count();
    auto sc = slack_color(s, std::move(outliers), opt.slack);
    rep.phases.push_back(phase_from(s, "dense-outliers", r0, c0, sc.failed));
  }
  {
    int64_t r0 = s.round(), c0 = s.commit_count();
    synch_color_trial(s, part, ds, skip, opt.tolerant_sct);
    rep.phases.push_back(phase_from(s, "dense-synch-trial", r0, c0, 0));
  }
  {
    std::vector<int32_t> rest;
    for (int32_t v : dense_uncolored()) {
      if (!std::binary_search(skip.begin(), skip.end(), v)) rest.push_back(v);
    }
    int64_t r0 = s.round(), c0 = s.commit_count();
    auto sc = slack_color(s, std::move(rest), opt.slack);
    rep.phases.push_back(phase_from(s, "dense-rest", r0, c0, sc.failed));
  }
  {
    int64_t r0 = s.round(), c0 = s.commit_count();
    int64_t bad = 0;
    for (const auto& set : pa.sets) {
      for (int32_t u : set) {
        if (s.status(u) != NodeStatus::Uncolored) continue;
        if (s.palette_size(u) == 0) {
          if (!opt.tolerant_sct) {
            throw EngineError("put-aside node with empty palette");
          }
          s.mark_bad(u);
          ++bad;
          continue;
        }
        s.greedy_commit(u);
      }
    }
    rep.phases.push_back(phase_from(s, "dense-put-aside", r0, c0, bad));
  }
  for (const auto& p : rep.phases) {
    rep.rounds += p.rounds;
    rep.bad += p.bad;
  }
  return rep;
}

PipelineReport combined_coloring(SimState& s, const EpsilonLedger& eps,
                                 const PipelineOptions& opt) {
  const D1lcInstance& inst = s.instance();
  CommonNeighbors cn(inst.graph);
  AcdPartition part = compute_acd(inst.graph, eps, &cn);
  SparseClassification cls = classify_sparse(inst, part, eps, opt.variant);

  PipelineReport rep = sparse_pipeline(s, part, cls, opt);
  if (!part.cliques.empty()) {
    DenseStructure ds = build_dense_structure(inst, part, &cn);
    PipelineReport dense = dense_pipeline(s, part, ds, eps, opt);
    rep.phases.insert(rep.phases.end(), dense.phases.begin(), dense.phases.end());
    rep.rounds += dense.rounds;
    rep.bad += dense.bad;
  }
  return rep;
}

uint64_t next_degree_bound(uint64_t delta, uint64_t floor_bound) {
  if (delta <= floor_bound) return floor_bound;
  uint64_t next;
  if ((delta & (delta - 1)) == 0) {
    // exact power of two: integer log, integer seventh power
    uint64_t lg = 0;
    for (uint64_t d = delta; d > 1; d >>= 1) ++lg;
    next = 1;
    for (int i = 0; i < 7; ++i) {
      if (next > delta / lg + 1) {
        next = UINT64_MAX;  // saturate; definitely not descending
        break;
      }
      next *= lg;
    }
  } else {
    double val = std::pow(std::log2(double(delta)), 7.0);
    next = val >= 9e18 ? UINT64_MAX : uint64_t(std::ceil(val));
  }
  if (next >= delta) return floor_bound;
  return std::max(next, floor_bound);
}

FullColoringReport full_coloring(SimState& s, const EpsilonLedger& eps,
                                 const PipelineOptions& opt) {
  FullColoringReport rep;
  const D1lcInstance& inst = s.instance();
  const Graph& g = inst.graph;
  const int32_t n = g.n();

  std::vector<uint64_t> bounds{uint64_t(std::max<int32_t>(n, 1))};
  while (bounds.back() > uint64_t(eps.degree_floor)) {
    bounds.push_back(next_degree_bound(bounds.back(), eps.degree_floor));
  }

  int32_t max_color = -1;
  for (const auto& pal : inst.palettes) {
    if (!pal.empty()) max_color = std::max(max_color, pal.back());
  }

  // per-class fallback: finish bad components greedily, tracking their sizes
  std::vector<char> is_bad(n, 0);
  auto fallback = [&](ClassStats& cs) {
    std::fill(is_bad.begin(), is_bad.end(), 0);
    std::vector<int32_t> bads;
    for (int32_t v = 0; v < n; ++v) {
      if (s.status(v) == NodeStatus::Bad) {
        is_bad[v] = 1;
        bads.push_back(v);
      }
    }
    std::vector<char> seen(n, 0);
    for (int32_t root : bads) {
      if (seen[root]) continue;
      std::vector<int32_t> comp;
      std::deque<int32_t> queue{root};
      seen[root] = 1;
      while (!queue.empty()) {
        int32_t v = queue.front();
        queue.pop_front();
        comp.push_back(v);
        for (int32_t u : g.neighbors(v)) {
          if (is_bad[u] && !seen[u]) {
            seen[u] = 1;
            queue.push_back(u);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      for (int32_t v : comp) s.greedy_commit(v);
      cs.max_bad_component =
          std::max(cs.max_bad_component, int64_t(comp.size()));
    }
    rep.max_bad_component = std::max(rep.max_bad_component, cs.max_bad_component);
  };

  for (size_t ci = 0; ci + 1 < bounds.size(); ++ci) {
    uint64_t hi = bounds[ci], lo = bounds[ci + 1];
    ClassStats cs;
    cs.degree_bound = int64_t(hi);

    std::vector<int32_t> members;
    for (int32_t v = 0; v < n; ++v) {
      uint64_t d = uint64_t(g.degree(v));
      if (d > lo && d <= hi && s.status(v) == NodeStatus::Uncolored) {
        members.push_back(v);
      }
    }
    cs.nodes = int64_t(members.size());
    if (members.empty()) {
      rep.classes.push_back(cs);
      continue;
    }

    // induced instance on the class, padded with virtual neighbors so every
    // node keeps its full uncolored degree (palettes stay deg+1 valid)
    std::vector<int32_t> to_sub(n, -1);
    for (size_t i = 0; i < members.size(); ++i) to_sub[members[i]] = int32_t(i);
    std::vector<std::pair<int32_t, int32_t>> edges;
    std::vector<int64_t> induced_deg(members.size(), 0);
    for (size_t i = 0; i < members.size(); ++i) {
      for (int32_t u : g.neighbors(members[i])) {
        int32_t j = to_sub[u];
        if (j >= 0) {
          ++induced_deg[i];
          if (j > int32_t(i)) edges.emplace_back(int32_t(i), j);
        }
      }
    }
    std::vector<std::vector<int32_t>> pals;
    pals.reserve(members.size());
    for (int32_t v : members) pals.push_back(s.palette_values(v));

    int32_t next_virtual = int32_t(members.size());
    int32_t fresh = max_color + 1;
    for (size_t i = 0; i < members.size(); ++i) {
      int64_t pad = s.uncolored_degree(members[i]) - induced_deg[i];
      for (int64_t p = 0; p < pad; ++p) {
        edges.emplace_back(int32_t(i), next_virtual++);
        pals.push_back({fresh, fresh + 1});
        fresh += 2;
      }
    }
    cs.virtual_nodes = next_virtual - int32_t(members.size());

    D1lcInstance sub =
        make_instance(Graph::from_edges(next_virtual, edges), std::move(pals));
    SimState ss(sub, hash_combine(s.seed(), 0xC1A5500ull + ci));
    ss.threads = s.threads;
    bool failed = false;
    try {
      combined_coloring(ss, eps, opt);
    } catch (const DecompositionFailure&) {
      failed = true;
    }
    cs.decomposition_failed = failed;
    cs.rounds = ss.round();
    rep.rounds += ss.round();

    for (size_t i = 0; i < members.size(); ++i) {
      if (!failed && ss.status(int32_t(i)) == NodeStatus::Colored) {
        s.commit(members[i], ss.color(int32_t(i)));
      } else {
        s.mark_bad(members[i]);
        ++cs.bad_after_pipeline;
      }
    }
    fallback(cs);
    rep.classes.push_back(cs);
  }

  // constant-degree tail: bounded random rounds, then a greedy sweep
  std::vector<int32_t> tail;
  for (int32_t v = 0; v < n; ++v) {
    if (s.status(v) == NodeStatus::Uncolored) tail.push_back(v);
  }
  int64_t cap = 40 + 8 * int64_t(std::ceil(std::log2(double(n) + 2)));
  for (int64_t t = 0; t < cap && !tail.empty(); ++t) {
    try_random_color_round(s, tail);
    ++rep.final_stage_rounds;
    tail = filter_uncolored(s, tail);
  }
  for (int32_t v : tail) {
    s.greedy_commit(v);
    ++rep.greedy_fallback_nodes;
  }
  rep.rounds += rep.final_stage_rounds;

  for (int32_t v = 0; v < n; ++v) {
    if (s.status(v) != NodeStatus::Colored) {
      throw EngineError("full coloring left node " + std::to_string(v) +
                        " uncolored");
    }
  }
  return rep;
}

}  // namespace d1lc
