#pragma once
// Coloring primitives and pipelines on top of the engine:
//   - TryRandomColor rounds and participation-sampled slack generation
//   - MultiTrial set rounds
//   - SlackColor (slack-aware schedule with termination checkpoints)
//   - dense-side steps: put-aside sets, synchronized color trial
//   - sparse and dense pipelines, their combination, and the full algorithm
//     with degree classes and the bad-component fallback
//
// Failure convention: nodes that fall behind a slack schedule are marked Bad
// and stay uncolored until a fallback (greedy over bad components) finishes
// the job. Everything is deterministic given the instance and master seed.

#include "d1lc/acd.hpp"
#include "d1lc/engine.hpp"
#include "d1lc/ledger.hpp"

#include <span>
#include <string>
#include <vector>

namespace d1lc {

// rng stream tags, one per decision kind
constexpr uint64_t kTagPropose = 1;
constexpr uint64_t kTagSample = 2;
constexpr uint64_t kTagMultiTrial = 3;
constexpr uint64_t kTagSynchTrial = 4;
constexpr uint64_t kTagPutAside = 5;

// One synchronous round where each listed node (skipping non-uncolored ones)
// proposes uniformly from its current palette. Returns commits.
int64_t try_random_color_round(SimState& s, std::span<const int32_t> active);

// Participation-sampled TryRandomColor round: each active node joins with
// probability p_num/p_den, then one proposal round among the joiners.
int64_t slack_generation(SimState& s, std::span<const int32_t> active,
                         long long p_num = 1, long long p_den = 10);

// One MultiTrial round: every active node draws min(x, palette) distinct
// colors and commits the lowest one absent from all participating neighbors'
// draws. Conflict-free by construction.
int64_t multi_trial_round(SimState& s, std::span<const int32_t> active,
                          int64_t x);

struct SlackColorParams {
  double kappa = 0.5;
  int64_t beta = 2;       // floor for the initial-phase ratio
  bool auto_beta = true;  // raise beta to the observed degree/slack ratio
  int64_t beta_cap = 20;
};

struct SlackColorReport {
  int64_t rounds = 0;
  int64_t bound = 0;  // t0 + 2(log* rho + 1) + 3 ceil(1/kappa) + 1
  int64_t colored = 0;
  int64_t failed = 0;  // marked Bad
  int64_t t0 = 0;
  int64_t beta = 0;
  int64_t s_min = 0;
  int64_t rho = 0;
  double kappa_eff = 0;
};

// Slack-aware coloring of `active`. Degrees and slack are scoped to the
// active set: inactive neighbors do not compete during the phase. Throws
// EngineError if the round budget is exceeded (it never should be).
SlackColorReport slack_color(SimState& s, std::vector<int32_t> active,
                             const SlackColorParams& params = {});

// --- dense-side steps -------------------------------------------------------

struct PutAsideReport {
  std::vector<int32_t> clique_ids;
  std::vector<std::vector<int32_t>> sets;  // parallel to clique_ids, sorted
  int64_t total = 0;
};

// Samples put-aside sets inside the uncolored inliers of each low-slack
// clique (sigma-bar_C <= ell), probability min(1, ell^2 / (48 Delta_C)),
// then drops members with a sampled dense neighbor outside their clique.
// The sets are pairwise non-adjacent across cliques (asserted). Nodes stay
// uncolored; the dense pipeline colors them last.
PutAsideReport put_aside(SimState& s, const AcdPartition& part,
                         const DenseStructure& ds, int64_t ell);

struct SynchTrialReport {
  std::vector<int32_t> clique_ids;
  std::vector<int64_t> attempted;  // uncolored, unskipped inliers at start
  std::vector<int64_t> decolored;  // attempted but not colored this round
};

// Synchronized color trial, all cliques in one LOCAL round: each leader
// shuffles its current palette and deals distinct candidate colors to its
// uncolored inliers in id order; an inlier tries its candidate iff the color
// is still in its own palette. `skip` (sorted) names nodes to leave alone,
// e.g. put-aside sets. Leaders with fewer palette colors than inliers only
// occur in tolerant mode (sampled lists), where they deal what they have.
SynchTrialReport synch_color_trial(SimState& s, const AcdPartition& part,
                                   const DenseStructure& ds,
                                   std::span<const int32_t> skip = {},
                                   bool tolerant = false);

// --- pipelines ---------------------------------------------------------------

struct PhaseStats {
  std::string phase;
  int64_t rounds = 0;
  int64_t colored = 0;
  int64_t bad = 0;
};

struct PipelineReport {
  std::vector<PhaseStats> phases;
  int64_t rounds = 0;
  int64_t bad = 0;
};

struct PipelineOptions {
  SlackColorParams slack;
  ClassifierVariant variant = ClassifierVariant::Discrepancy;
  bool tolerant_sct = false;        // sampled-list mode
  bool skip_dense_slackgen = false;  // when slack generation already ran
};

// Alg: slack generation on sparse+uneven, then SlackColor on the start wave,
// then SlackColor on the remaining sparse+uneven nodes.
PipelineReport sparse_pipeline(SimState& s, const AcdPartition& part,
                               const SparseClassification& cls,
                               const PipelineOptions& opt = {});

// Alg: slack generation on dense nodes, put-aside in low-slack cliques,
// SlackColor on outliers, synchronized color trial, SlackColor on the rest,
// greedy per-clique finish of the put-aside sets.
PipelineReport dense_pipeline(SimState& s, const AcdPartition& part,
                              const DenseStructure& ds,
                              const EpsilonLedger& eps,
                              const PipelineOptions& opt = {});

// Decomposition + classification + sparse pipeline + dense pipeline.
// Propagates DecompositionFailure.
PipelineReport combined_coloring(SimState& s, const EpsilonLedger& eps,
                                 const PipelineOptions& opt = {});

// --- full algorithm -----------------------------------------------------------

// Next degree-class bound: ceil(log2(delta)^7) when that descends, otherwise
// the floor. Exact powers of two take the integer log.
uint64_t next_degree_bound(uint64_t delta, uint64_t floor_bound = 32);

struct ClassStats {
  int64_t degree_bound = 0;  // class covers degrees in (next_bound, bound]
  int64_t nodes = 0;
  int64_t virtual_nodes = 0;
  int64_t bad_after_pipeline = 0;
  int64_t max_bad_component = 0;
  int64_t rounds = 0;
  bool decomposition_failed = false;
};

struct FullColoringReport {
  std::vector<ClassStats> classes;
  int64_t rounds = 0;
  int64_t final_stage_rounds = 0;
  int64_t greedy_fallback_nodes = 0;  // final-stage survivors swept greedily
  int64_t max_bad_component = 0;
};

// Degree classes from high to low: each class is colored as its own padded
// instance via combined_coloring (a DecompositionFailure sends the whole
// class to the fallback), bad components are finished greedily after each
// class, and the constant-degree tail runs bounded TryRandomColor rounds
// plus a greedy sweep. Total by construction.
FullColoringReport full_coloring(SimState& s, const EpsilonLedger& eps,
                                 const PipelineOptions& opt = {});

}  // namespace d1lc
