#include "d1lc/probes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "d1lc/acd.hpp"
#include "d1lc/coloring.hpp"
#include "d1lc/gen.hpp"
#include "d1lc/ledger.hpp"
#include "d1lc/metrics.hpp"
#include "d1lc/rng.hpp"
#include "d1lc/transversal.hpp"

namespace d1lc {

double binom_lower_tail(int64_t n, double p, int64_t k) {
  if (n <= 0 || p <= 0.0) return 1.0;
  if (k < 0) return 0.0;
  if (k >= n || p >= 1.0) return k >= n ? 1.0 : 0.0;
  const long double lp = logl((long double)p);
  const long double lq = log1pl(-(long double)p);
  const long double lgn = lgammal((long double)n + 1.0L);
  long double acc = 0.0L;
  for (int64_t i = 0; i <= k; ++i) {
    long double lt = lgn - lgammal((long double)i + 1.0L) -
                     lgammal((long double)(n - i) + 1.0L) +
                     (long double)i * lp + (long double)(n - i) * lq;
    acc += expl(lt);
  }
  return double(std::min(acc, 1.0L));
}

bool statistical_pass(int64_t trials, int64_t failures, double theta,
                      double* p_value) {
  double p = binom_lower_tail(trials, theta, trials - failures);
  if (p_value) *p_value = p;
  return p >= 0.01;
}

namespace {

// Classifier cutoffs are loosened for the probe instances so the wave
// classes are populated at a few hundred nodes; the decomposition epsilons
// stay at their standard values.
EpsilonLedger probe_eps() {
  EpsilonLedger eps = EpsilonLedger::desk();
  eps.eps_hat = Rat(1, 4);
  eps.eps_hc = Rat(1, 10);
  return eps;
}

void need(bool ok, const char* what) {
  if (!ok) throw std::runtime_error(std::string("probe setup: ") + what);
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Applies the refutation rule and stamps the tail probability.
ProbeOutcome finish(ProbeOutcome out) {
  out.pass = statistical_pass(out.trials, out.failures, out.theta, &out.p_value);
  return out;
}

// Convenience for RatSum-vs-count comparisons: true iff bound > value * k,
// i.e. the observed integer `value` fails to reach bound / k.
bool below_scaled(const RatSum& bound, int64_t value, const Rat& k) {
  RatSum v;
  if (value != 0) v.add(value, 1);
  return RatSum::cmp_scaled(bound, v, k) > 0;
}

// --- slack from one sampled color trial, sparse families --------------------

// Max-degree node of a random sparse graph with palettes drawn from a shared
// color space: one participation-1/10 trial round should produce slack
// proportional to its degree (fitted floor deg/100).
ProbeOutcome probe_sparse_slack(int64_t trials, uint64_t seed) {
  Graph g = gnp(1000, 200.0, 9101);
  auto pals = make_palettes(g, PaletteScheme::RandomFromSpace, 500, 9102);
  D1lcInstance inst = make_instance(std::move(g), std::move(pals));
  const Graph& gr = inst.graph;

  EpsilonLedger eps = probe_eps();
  CommonNeighbors cn(gr);
  AcdPartition part = compute_acd(gr, eps, &cn);
  need(part.attempts == 1, "sparse-slack: decomposition retried");

  int32_t target = 0;
  for (int32_t v = 1; v < gr.n(); ++v) {
    if (gr.degree(v) > gr.degree(target)) target = v;
  }
  need(part.cls[target] == NodeClass::Sparse, "sparse-slack: target not sparse");

  std::vector<int32_t> active;
  for (int32_t v = 0; v < gr.n(); ++v) {
    if (v != target && part.cls[v] != NodeClass::Dense) active.push_back(v);
  }
  const int64_t d = gr.degree(target);
  const int64_t slack0 =
      int64_t(inst.palettes[inst.palette_id[target]].size()) - d;

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  for (int64_t t = 0; t < trials; ++t) {
    SimState s(inst, hash_combine(seed, uint64_t(t)));
    slack_generation(s, active);
    ++out.runs;
    out.conflicts += s.conflicts_detected();
    int64_t gain = s.slack(target) - slack0;
    mean += double(gain);
    if (100 * gain < d) ++out.failures;
  }
  out.notes = "degree " + std::to_string(d) + ", floor deg/100, mean gain " +
              fmt(mean / double(trials));
  return finish(out);
}

// Start node over eight 8-cliques: the cliques are uneven (easy wave) and the
// apex must keep at least 3/4 of them uncolored after the trial round, so the
// later waves still find a reservoir of uncolored easy neighbors.
ProbeOutcome probe_start_reservoir(int64_t trials, uint64_t seed) {
  D1lcInstance inst = apex_cliques(8, 8);
  const Graph& g = inst.graph;
  EpsilonLedger eps = probe_eps();
  AcdPartition part = compute_acd(g, eps);
  SparseClassification cls = classify_sparse(inst, part, eps);
  need(cls.wave[0] == SparseWave::Start, "start-reservoir: apex not start");
  for (int32_t u : g.neighbors(0)) {
    need(cls.wave[u] == SparseWave::Easy, "start-reservoir: neighbor not easy");
  }

  std::vector<int32_t> active;
  for (int32_t v = 1; v < g.n(); ++v) active.push_back(v);
  const int64_t d = g.degree(0);

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  for (int64_t t = 0; t < trials; ++t) {
    SimState s(inst, hash_combine(seed, uint64_t(t)));
    slack_generation(s, active);
    ++out.runs;
    out.conflicts += s.conflicts_detected();
    int64_t unc = 0;
    for (int32_t u : g.neighbors(0)) {
      unc += s.status(u) == NodeStatus::Uncolored;
    }
    mean += double(unc);
    if (4 * unc < 3 * d) ++out.failures;
  }
  out.notes = "degree " + std::to_string(d) + ", floor 3deg/4, mean uncolored " +
              fmt(mean / double(trials));
  return finish(out);
}

// Balanced node: all of its sparsity comes from same-or-higher degree
// neighbors, and the slack it collects should be a fraction of that sparsity
// (fitted floor sparsity/1000 at participation 1/10).
ProbeOutcome probe_balanced_slack(int64_t trials, uint64_t seed) {
  D1lcInstance inst = planted_balanced(6000, 0.75, 9103);
  const Graph& g = inst.graph;
  EpsilonLedger eps = probe_eps();
  CommonNeighbors cn(g);
  AcdPartition part = compute_acd(g, eps, &cn);
  need(part.attempts == 1, "balanced-slack: decomposition retried");
  need(part.cls[0] == NodeClass::Sparse, "balanced-slack: target not sparse");
  SparseClassification cls = classify_sparse(inst, part, eps);
  need(cls.balanced[0], "balanced-slack: target not balanced");
  need(!cls.discrepant[0], "balanced-slack: target is discrepant");

  Rat zeta = sparsity(g, cn, 0);
  std::vector<int32_t> active;
  for (int32_t v = 1; v < g.n(); ++v) {
    if (part.cls[v] != NodeClass::Dense) active.push_back(v);
  }
  const int64_t slack0 =
      int64_t(inst.palettes[inst.palette_id[0]].size()) - g.degree(0);

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  for (int64_t t = 0; t < trials; ++t) {
    SimState s(inst, hash_combine(seed, uint64_t(t)));
    slack_generation(s, active);
    ++out.runs;
    out.conflicts += s.conflicts_detected();
    int64_t gain = s.slack(0) - slack0;
    mean += double(gain);
    if (Rat(1000 * gain) < zeta) ++out.failures;
  }
  out.notes = "sparsity " + fmt(zeta.to_double()) +
              ", floor sparsity/1000, mean gain " + fmt(mean / double(trials));
  return finish(out);
}

// Heavy node: its neighbors concentrate on a thin shared block, so their
// committed colors collide and nearly every commit past the block size is
// slack (fitted floor deg/100).
ProbeOutcome probe_heavy_slack(int64_t trials, uint64_t seed) {
  D1lcInstance inst = heavy_apex(900, 30);
  const Graph& g = inst.graph;
  EpsilonLedger eps = probe_eps();
  AcdPartition part = compute_acd(g, eps);
  SparseClassification cls = classify_sparse(inst, part, eps);
  need(cls.wave[0] == SparseWave::Heavy, "heavy-slack: apex not heavy");

  std::vector<int32_t> active;
  for (int32_t v = 1; v < g.n(); ++v) active.push_back(v);
  const int64_t d = g.degree(0);
  const int64_t slack0 =
      int64_t(inst.palettes[inst.palette_id[0]].size()) - d;

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  for (int64_t t = 0; t < trials; ++t) {
    SimState s(inst, hash_combine(seed, uint64_t(t)));
    slack_generation(s, active);
    ++out.runs;
    out.conflicts += s.conflicts_detected();
    int64_t gain = s.slack(0) - slack0;
    mean += double(gain);
    if (100 * gain < d) ++out.failures;
  }
  out.notes = "degree " + std::to_string(d) + ", floor deg/100, mean gain " +
              fmt(mean / double(trials));
  return finish(out);
}

// --- the tough family --------------------------------------------------------

struct ToughFamily {
  D1lcInstance inst;
  std::vector<int32_t> active;   // everything but the apex
  std::vector<int32_t> middles;  // the apex's neighbors, ascending
};

ToughFamily build_tough_family() {
  ToughFamily fam{tough_apex(600, 60, 20, 9104), {}, {}};
  const Graph& g = fam.inst.graph;
  EpsilonLedger eps = probe_eps();
  AcdPartition part = compute_acd(g, eps);
  SparseClassification cls = classify_sparse(fam.inst, part, eps);
  need(cls.wave[0] == SparseWave::Tough, "tough family: apex not tough");
  need(!cls.balanced[0] && !cls.discrepant[0] && !cls.heavy[0],
       "tough family: apex fails a negative predicate");
  need(heavy_colors(fam.inst, g.neighbors(0), eps.eps_hc).empty(),
       "tough family: some neighborhood color is heavy");
  for (int32_t v = 1; v < g.n(); ++v) fam.active.push_back(v);
  auto nb = g.neighbors(0);
  fam.middles.assign(nb.begin(), nb.end());
  return fam;
}

// Around a tough node, enough non-adjacent neighbor pairs propose the same
// color in the trial round (every color here is light). The proposals are
// replayed from the per-node streams before the round runs, which pins the
// count to the exact draws the engine makes.
ProbeOutcome probe_tough_pairs(int64_t trials, uint64_t seed) {
  ToughFamily fam = build_tough_family();
  const Graph& g = fam.inst.graph;
  const int64_t d = g.degree(0);

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  std::map<int32_t, std::vector<int32_t>> buckets;
  for (int64_t t = 0; t < trials; ++t) {
    SimState s(fam.inst, hash_combine(seed, uint64_t(t)));
    // replay the joiner and proposal draws the engine is about to make
    buckets.clear();
    for (int32_t u : fam.middles) {
      StreamRng join = s.rng(u, kTagSample);
      if (!join.chance(1, 10)) continue;
      StreamRng prop = s.rng(u, kTagPropose);
      buckets[s.palette_sample(u, prop)].push_back(u);
    }
    int64_t z = 0;
    for (const auto& [c, b] : buckets) {
      for (size_t i = 0; i < b.size(); ++i) {
        for (size_t j = i + 1; j < b.size(); ++j) {
          z += !g.adjacent(b[i], b[j]);
        }
      }
    }
    slack_generation(s, fam.active);
    ++out.runs;
    out.conflicts += s.conflicts_detected();
    mean += double(z);
    if (100 * z < d) ++out.failures;
  }
  out.notes = "degree " + std::to_string(d) +
              ", floor deg/100, mean same-color pairs " +
              fmt(mean / double(trials));
  return finish(out);
}

// The slack the tough node actually banks from those collisions
// (fitted floor deg/200).
ProbeOutcome probe_tough_slack(int64_t trials, uint64_t seed) {
  ToughFamily fam = build_tough_family();
  const Graph& g = fam.inst.graph;
  const int64_t d = g.degree(0);
  const int64_t slack0 =
      int64_t(fam.inst.palettes[fam.inst.palette_id[0]].size()) - d;

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  for (int64_t t = 0; t < trials; ++t) {
    SimState s(fam.inst, hash_combine(seed, uint64_t(t)));
    slack_generation(s, fam.active);
    ++out.runs;
    out.conflicts += s.conflicts_detected();
    int64_t gain = s.slack(0) - slack0;
    mean += double(gain);
    if (200 * gain < d) ++out.failures;
  }
  out.notes = "degree " + std::to_string(d) + ", floor deg/200, mean gain " +
              fmt(mean / double(trials));
  return finish(out);
}

// --- dense families ----------------------------------------------------------

struct DenseFamily {
  D1lcInstance inst;
  AcdPartition part;
  DenseStructure ds;
  int32_t big_cid = -1;  // the 3000-clique
};

// One 3000-clique on a shared palette, 600 low-id members boosted by a
// satellite clique so they absorb the max-degree outlier quota, and one
// unboosted member carrying a private disjoint clique: that member is a
// dense inlier whose slackability is pure neighborhood sparsity.
DenseFamily build_dense_family() {
  DenseFamily fam{clique_pair(3000, 200, 600, 2000), {}, {}, -1};
  const Graph& g = fam.inst.graph;
  EpsilonLedger eps = probe_eps();
  CommonNeighbors cn(g);
  fam.part = compute_acd(g, eps, &cn);
  need(fam.part.attempts == 1, "dense family: decomposition retried");
  need(fam.part.cls[2000] == NodeClass::Dense, "dense family: apex not dense");
  need(fam.part.cls[3000] == NodeClass::Uneven,
       "dense family: satellite clique not uneven");
  need(fam.part.cls[3200] == NodeClass::Dense,
       "dense family: private clique not dense");
  fam.big_cid = fam.part.clique_id[2000];
  need(fam.big_cid == fam.part.clique_id[0] &&
           fam.part.cliques[fam.big_cid].size() == 3000,
       "dense family: big clique misassembled");

  fam.ds = build_dense_structure(fam.inst, fam.part, &cn);
  const CliqueRoles& roles = fam.ds.roles[fam.big_cid];
  need(roles.leader == 600, "dense family: leader drifted");
  need(std::binary_search(roles.inliers.begin(), roles.inliers.end(), 2000),
       "dense family: apex not an inlier");
  need(check_anti_neighbor_bound(fam.ds, fam.part).empty(),
       "dense family: anti-neighbor bound violated");
  need(check_inlier_bounds(g, fam.ds, fam.part).empty(),
       "dense family: inlier bounds violated");
  need(check_external_zero_case(fam.ds, fam.part).empty(),
       "dense family: zero-slackability node with external neighbors");
  return fam;
}

// Dense inlier slack: the private clique's commits land outside the shared
// palette, so the apex gains slack proportional to its slackability (fitted
// floor slackability/50). The same trial must leave every node at least 3/4
// of its neighbors uncolored, and the apex palette may drift from the
// leader's by at most 12 times the leader's strong slackability.
ProbeOutcome probe_dense_slack(int64_t trials, uint64_t seed) {
  DenseFamily fam = build_dense_family();
  const Graph& g = fam.inst.graph;
  EpsilonLedger eps = probe_eps();

  const RatSum& sigma = fam.ds.slackability[2000];
  const int32_t leader = fam.ds.roles[fam.big_cid].leader;
  const RatSum& sigma_leader = fam.ds.strong_slackability[leader];
  need(sigma >= Rat(eps.ell(g.max_degree())),
       "dense family: apex slackability below ell");

  std::vector<int32_t> active;
  for (int32_t v = 0; v < g.n(); ++v) {
    if (v != 2000 && fam.part.cls[v] == NodeClass::Dense) active.push_back(v);
  }
  const int64_t slack0 =
      int64_t(fam.inst.palettes[fam.inst.palette_id[2000]].size()) -
      g.degree(2000);

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  std::vector<int64_t> colored_nbrs(g.n());
  for (int64_t t = 0; t < trials; ++t) {
    SimState s(fam.inst, hash_combine(seed, uint64_t(t)));
    slack_generation(s, active);
    ++out.runs;
    out.conflicts += s.conflicts_detected();

    int64_t gain = s.slack(2000) - slack0;
    mean += double(gain);
    bool fail = below_scaled(sigma, gain, Rat(50));

    // nobody may lose more than a quarter of its neighborhood in one round
    std::fill(colored_nbrs.begin(), colored_nbrs.end(), 0);
    for (int32_t v = 0; v < g.n(); ++v) {
      if (s.status(v) != NodeStatus::Colored) continue;
      for (int32_t u : g.neighbors(v)) ++colored_nbrs[u];
    }
    for (int32_t v = 0; v < g.n() && !fail; ++v) {
      if (4 * colored_nbrs[v] > g.degree(v)) fail = true;
    }

    // palette drift toward the leader: identical lists to start with
    auto pa = s.palette_values(2000);
    auto px = s.palette_values(leader);
    int64_t sym = 0;
    size_t i = 0, j = 0;
    while (i < pa.size() || j < px.size()) {
      if (j == px.size() || (i < pa.size() && pa[i] < px[j])) ++sym, ++i;
      else if (i == pa.size() || px[j] < pa[i]) ++sym, ++j;
      else ++i, ++j;
    }
    RatSum sym_sum;
    if (sym != 0) sym_sum.add(sym, 1);
    if (RatSum::cmp_scaled(sym_sum, sigma_leader, Rat(12)) > 0) fail = true;

    if (fail) ++out.failures;
  }
  out.notes = "slackability " + fmt(sigma.to_double()) +
              ", floor slackability/50, mean gain " + fmt(mean / double(trials));
  return finish(out);
}

// Summed disparity from a leader to its uncolored inliers after one trial
// round, against the 44x clique-slackability ceiling. Two families: shifted
// palettes on a 60-clique (nonzero ceiling), and the boosted clique pair
// (zero ceiling, so the sum must vanish exactly).
ProbeOutcome probe_leader_disparity(int64_t trials, uint64_t seed) {
  // family 1: K60 with sliding palettes
  Graph k60 = complete_graph(60);
  auto pals = make_palettes(k60, PaletteScheme::Shifted, 1, 0);
  D1lcInstance shifted = make_instance(std::move(k60), std::move(pals));
  EpsilonLedger eps = probe_eps();
  AcdPartition part1 = compute_acd(shifted.graph, eps);
  need(part1.cliques.size() == 1 && part1.cliques[0].size() == 60,
       "leader-disparity: K60 not one clique");
  DenseStructure ds1 = build_dense_structure(shifted, part1);
  const int32_t x1 = ds1.roles[0].leader;
  need(x1 == 29, "leader-disparity: K60 leader drifted");
  need(ds1.roles[0].inliers.size() == 39,
       "leader-disparity: K60 inlier count drifted");
  const RatSum& cap1 = ds1.clique_slackability[0];
  need(!cap1.zero(), "leader-disparity: K60 slackability vanished");

  // family 2: the boosted clique pair, leader slackability exactly zero
  DenseFamily fam = build_dense_family();
  const int32_t x2 = fam.ds.roles[fam.big_cid].leader;
  need(fam.ds.clique_slackability[fam.big_cid].zero(),
       "leader-disparity: big clique slackability nonzero");

  std::vector<int32_t> active1;
  for (int32_t v = 0; v < shifted.graph.n(); ++v) {
    if (v != x1) active1.push_back(v);
  }
  std::vector<int32_t> active2;
  for (int32_t v = 0; v < fam.inst.graph.n(); ++v) {
    if (v != x2 && fam.part.cls[v] == NodeClass::Dense) active2.push_back(v);
  }

  // summed |palette(x) minus palette(u)| over uncolored inliers, as an exact
  // integer numerator over |palette(x)|
  auto disparity_sum = [](SimState& s, const CliqueRoles& roles,
                          int32_t x) -> std::pair<int64_t, int64_t> {
    auto px = s.palette_values(x);
    int64_t num = 0;
    for (int32_t u : roles.inliers) {
      if (s.status(u) != NodeStatus::Uncolored) continue;
      int64_t extra = 0;
      size_t i = 0, j = 0;
      auto pu = s.palette_values(u);
      while (i < px.size()) {
        if (j == pu.size() || px[i] < pu[j]) ++extra, ++i;
        else if (pu[j] < px[i]) ++j;
        else ++i, ++j;
      }
      num += extra;
    }
    return {num, int64_t(px.size())};
  };

  ProbeOutcome out;
  out.trials = trials;
  double mean1 = 0;
  for (int64_t t = 0; t < trials; ++t) {
    uint64_t st = hash_combine(seed, uint64_t(t));
    bool fail = false;

    SimState s1(shifted, hash_combine(st, 1));
    slack_generation(s1, active1);
    ++out.runs;
    out.conflicts += s1.conflicts_detected();
    auto [num1, den1] = disparity_sum(s1, ds1.roles[0], x1);
    mean1 += double(num1) / double(den1);
    RatSum d1;
    if (num1 != 0) d1.add(num1, den1);
    if (RatSum::cmp_scaled(d1, cap1, Rat(44)) > 0) fail = true;

    SimState s2(fam.inst, hash_combine(st, 2));
    slack_generation(s2, active2);
    ++out.runs;
    out.conflicts += s2.conflicts_detected();
    auto [num2, den2] = disparity_sum(s2, fam.ds.roles[fam.big_cid], x2);
    (void)den2;
    if (num2 != 0) fail = true;  // 44 * 0 leaves no room at all

    if (fail) ++out.failures;
  }
  out.notes = "shifted-K60 ceiling " + fmt(44 * cap1.to_double()) +
              ", mean sum " + fmt(mean1 / double(trials)) +
              "; zero-slackability family must sum to 0 exactly";
  return finish(out);
}

// Synchronized color trial residue: the leader deals distinct candidates, and
// the count of inliers left uncolored stays within 4x the clique
// slackability. Perturbed cliques give a small nonzero ceiling; identical
// palettes give a zero ceiling, where the trial must color everyone it
// touches.
ProbeOutcome probe_synch_residue(int64_t trials, uint64_t seed) {
  D1lcInstance pert = perturbed_cliques(60, 6);
  EpsilonLedger eps = probe_eps();
  AcdPartition part1 = compute_acd(pert.graph, eps);
  need(part1.cliques.size() == 6, "synch-residue: perturbed cliques drifted");
  DenseStructure ds1 = build_dense_structure(pert, part1);
  for (size_t c = 0; c < part1.cliques.size(); ++c) {
    need(!ds1.clique_slackability[c].zero(),
         "synch-residue: perturbed slackability vanished");
  }

  Graph un = union_of_cliques(50, 4);
  auto upals = make_palettes(un, PaletteScheme::Identical, 0, 0);
  D1lcInstance ident = make_instance(std::move(un), std::move(upals));
  AcdPartition part2 = compute_acd(ident.graph, eps);
  need(part2.cliques.size() == 4, "synch-residue: clique union drifted");
  DenseStructure ds2 = build_dense_structure(ident, part2);
  for (size_t c = 0; c < part2.cliques.size(); ++c) {
    need(ds2.clique_slackability[c].zero(),
         "synch-residue: identical palettes should have zero slackability");
  }

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  for (int64_t t = 0; t < trials; ++t) {
    uint64_t st = hash_combine(seed, uint64_t(t));
    bool fail = false;

    SimState s1(pert, hash_combine(st, 1));
    SynchTrialReport r1 = synch_color_trial(s1, part1, ds1);
    ++out.runs;
    out.conflicts += s1.conflicts_detected();
    for (size_t i = 0; i < r1.clique_ids.size(); ++i) {
      mean += double(r1.decolored[i]);
      RatSum dec;
      if (r1.decolored[i] != 0) dec.add(r1.decolored[i], 1);
      if (RatSum::cmp_scaled(dec, ds1.clique_slackability[r1.clique_ids[i]],
                             Rat(4)) > 0) {
        fail = true;
      }
    }

    SimState s2(ident, hash_combine(st, 2));
    SynchTrialReport r2 = synch_color_trial(s2, part2, ds2);
    ++out.runs;
    out.conflicts += s2.conflicts_detected();
    for (int64_t dec : r2.decolored) {
      if (dec != 0) fail = true;  // zero ceiling: everyone must succeed
    }

    if (fail) ++out.failures;
  }
  out.notes = "ceiling 4x slackability (" +
              fmt(4 * ds1.clique_slackability[0].to_double()) +
              " per perturbed clique), mean decolored per clique " +
              fmt(mean / double(trials * 6));
  return finish(out);
}

// Put-aside floor: a full-size low-slack clique keeps a set of at least
// ell^2/500 nodes (ell^2/48 sampled, minus cross-clique kills from the
// satellite cliques its members touch).
ProbeOutcome probe_putaside_size(int64_t trials, uint64_t seed) {
  EpsilonLedger eps = probe_eps();
  eps.ell_exponent = 1.169;  // puts ell^3 exactly at the clique size below

  D1lcInstance inst = clique_satellites(8000, 2667, 1000, 10, 150);
  const Graph& g = inst.graph;
  CommonNeighbors cn(g);
  AcdPartition part = compute_acd(g, eps, &cn);
  need(part.attempts == 1, "putaside-size: decomposition retried");
  DenseStructure ds = build_dense_structure(inst, part, &cn);

  const int64_t ell = eps.ell(g.max_degree());
  need(ell == 20, "putaside-size: ell drifted");
  const int32_t main_cid = part.clique_id[0];
  need(int64_t(part.cliques[main_cid].size()) >= ell * ell * ell,
       "putaside-size: clique smaller than ell cubed");
  need(ds.clique_slackability[main_cid].zero(),
       "putaside-size: main clique slackability nonzero");
  need(ds.roles[main_cid].leader == 0, "putaside-size: leader drifted");
  need(int64_t(ds.roles[main_cid].inliers.size()) == 5332,
       "putaside-size: inlier count drifted");

  const int64_t floor_size = std::max<int64_t>(1, (ell * ell) / 500);

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  for (int64_t t = 0; t < trials; ++t) {
    SimState s(inst, hash_combine(seed, uint64_t(t)));
    PutAsideReport rep = put_aside(s, part, ds, ell);
    ++out.runs;
    int64_t got = 0;
    for (size_t i = 0; i < rep.clique_ids.size(); ++i) {
      if (rep.clique_ids[i] == main_cid) got = int64_t(rep.sets[i].size());
    }
    mean += double(got);
    if (got < floor_size) ++out.failures;
  }
  out.notes = "ell " + std::to_string(ell) + ", floor ell^2/500 = " +
              std::to_string(floor_size) + ", mean size " +
              fmt(mean / double(trials));
  return finish(out);
}

// Multi-color trial success rate: throwing x candidate colors misses with
// probability at most 2^-x (plus a 0.02 tolerance pooled over many nodes)
// whenever palettes are at least 2x times the degree.
ProbeOutcome probe_multitrial_rate(int64_t trials, uint64_t seed) {
  Graph g = random_regular(500, 20, 9105);
  auto pals = make_palettes(g, PaletteScheme::Identical, 200, 0);
  D1lcInstance inst = make_instance(std::move(g), std::move(pals));
  const int32_t n = inst.graph.n();
  std::vector<int32_t> all(n);
  for (int32_t v = 0; v < n; ++v) all[v] = v;

  const int64_t states = std::max<int64_t>(1, trials / 50);
  ProbeOutcome out;
  out.theta = 0;  // this probe uses the criterion's own tolerance rule
  out.p_value = 1.0;
  std::string rates;
  for (int64_t x = 1; x <= 5; ++x) {
    need(2 * x * 20 <= 200, "multitrial-rate: palette hypothesis broken");
    int64_t colored = 0, total = 0;
    for (int64_t k = 0; k < states; ++k) {
      SimState s(inst, hash_combine(hash_combine(seed, uint64_t(x)), uint64_t(k)));
      multi_trial_round(s, all, x);
      ++out.runs;
      out.conflicts += s.conflicts_detected();
      colored += s.commit_count();
      total += n;
    }
    ++out.trials;
    // rate >= 1 - 2^-x - 0.02, scaled to integers
    bool ok = colored * (int64_t(1) << x) * 50 >=
              49 * total * (int64_t(1) << x) - 50 * total;
    if (!ok) ++out.failures;
    rates += (rates.empty() ? "x=" : ", x=") + std::to_string(x) + ": " +
             fmt(double(colored) / double(total));
  }
  out.pass = out.failures == 0;
  out.p_value = out.pass ? 1.0 : 0.0;
  out.notes = "pooled success rates " + rates + " vs floors 1 - 2^-x - 0.02";
  return out;
}

// Independent transversal: sampled thinning over a four-part graph built
// from random matchings must end independent, hit every part at least
// q log2(n) times, and never shrink a part's pool by more than 8q per stage.
ProbeOutcome probe_transversal(int64_t trials, uint64_t seed) {
  const int32_t parts_n = 4, part_size = 131072;
  Graph h = multipartite_matchings(parts_n, part_size, 18, 9106);
  need(h.max_degree() <= 64, "transversal: degree bound broken");

  std::vector<std::vector<int32_t>> parts(parts_n);
  for (int32_t i = 0; i < parts_n; ++i) {
    parts[i].resize(part_size);
    for (int32_t j = 0; j < part_size; ++j) parts[i][j] = i * part_size + j;
  }
  // q = 64^(1/3) = 4 exactly; k = q log2(n) with n = 2^19
  const int64_t k_floor = 4 * 19;

  ProbeOutcome out;
  out.trials = trials;
  double mean = 0;
  for (int64_t t = 0; t < trials; ++t) {
    TransversalReport rep =
        transversal(h, parts, 2, 64, hash_combine(seed, uint64_t(t)));
    ++out.runs;
    bool fail = !rep.independent || rep.q != 4.0 || !rep.empty_parts.empty();
    for (int32_t i = 0; i < parts_n; ++i) {
      int64_t prev = part_size;
      for (const auto& st : rep.stages) {
        if (32 * st.part_sizes[i] < prev) fail = true;
        prev = st.part_sizes[i];
      }
      if (prev < k_floor) fail = true;
      mean += double(prev) / double(parts_n);
    }
    if (fail) ++out.failures;
  }
  out.notes = "floor per part " + std::to_string(k_floor) +
              ", mean final part size " + fmt(mean / double(trials)) +
              ", stage shrink capped at 1/32";
  return finish(out);
}

using ProbeFn = ProbeOutcome (*)(int64_t, uint64_t);

struct Registered {
  ProbeSpec spec;
  ProbeFn fn;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> reg = {
      {{"sparse-slack",
        "a max-degree sparse node gains deg/100 slack from one sampled trial",
        1000},
       probe_sparse_slack},
      {{"start-reservoir",
        "a start node keeps 3/4 of its easy neighbors uncolored after the "
        "trial round",
        1000},
       probe_start_reservoir},
      {{"balanced-slack",
        "a balanced node gains sparsity/1000 slack from one sampled trial",
        1000},
       probe_balanced_slack},
      {{"heavy-slack",
        "a heavy node gains deg/100 slack from one sampled trial", 1000},
       probe_heavy_slack},
      {{"tough-pairs",
        "deg/100 non-adjacent pairs around a tough node propose the same "
        "color",
        1000},
       probe_tough_pairs},
      {{"tough-slack",
        "a tough node gains deg/200 slack from one sampled trial", 1000},
       probe_tough_slack},
      {{"dense-slack",
        "a dense inlier gains slackability/50 slack; palettes drift at most "
        "12 sigma from the leader",
        1000},
       probe_dense_slack},
      {{"leader-disparity",
        "summed leader-to-inlier disparity stays under 44x the clique "
        "slackability",
        1000},
       probe_leader_disparity},
      {{"synch-residue",
        "a synchronized color trial decolors at most 4x the clique "
        "slackability per clique",
        1000},
       probe_synch_residue},
      {{"putaside-size",
        "a full-size low-slack clique keeps a put-aside set of ell^2/500 "
        "nodes",
        1000},
       probe_putaside_size},
      {{"multitrial-rate",
        "x candidate colors succeed with rate 1 - 2^-x - 0.02 under wide "
        "palettes",
        1000},
       probe_multitrial_rate},
      {{"transversal",
        "sampled thinning yields an independent transversal hitting every "
        "part q log2(n) times",
        1000},
       probe_transversal},
  };
  return reg;
}

}  // namespace

const std::vector<ProbeSpec>& probe_registry() {
  static const std::vector<ProbeSpec> specs = [] {
    std::vector<ProbeSpec> out;
    for (const auto& r : registry()) out.push_back(r.spec);
    return out;
  }();
  return specs;
}

ProbeOutcome run_probe(const std::string& name, int64_t trials, uint64_t seed) {
  for (const auto& r : registry()) {
    if (r.spec.name != name) continue;
    int64_t t = trials > 0 ? trials : r.spec.default_trials;
    ProbeOutcome out = r.fn(t, seed);
    out.name = r.spec.name;
    out.claim = r.spec.claim;
    return out;
  }
  throw std::invalid_argument("unknown probe: " + name);
}

std::pair<bool, bool> two_hop_independence_probe(
    const D1lcInstance& inst, const std::function<void(SimState&)>& algorithm,
    int32_t v, uint64_t seed, uint64_t adversary_seed) {
  const Graph& g = inst.graph;
  std::vector<char> near(g.n(), 0);
  near[v] = 1;
  for (int32_t u : g.neighbors(v)) {
    near[u] = 1;
    for (int32_t w : g.neighbors(u)) near[w] = 1;
  }

  SimState base(inst, seed);
  algorithm(base);

  SimState adv(inst, seed);
  for (int32_t u = 0; u < g.n(); ++u) {
    if (!near[u]) {
      adv.set_seed_override(u, hash_combine(adversary_seed, uint64_t(u)));
    }
  }
  algorithm(adv);

  return {base.status(v) == NodeStatus::Colored,
          adv.status(v) == NodeStatus::Colored};
}

}  // namespace d1lc
