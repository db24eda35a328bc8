#pragma once
// Experiment orchestration: repeated seeded runs of one algorithm over one
// instance, tabulated as CSV (the plotting contract). Per-trial seeds are
// hashed from the master seed, so a report is reproducible byte for byte
// under any thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "d1lc/coloring.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/ledger.hpp"

namespace d1lc {

enum class Algo { Full, Combined, Sparse, Dense, SlackColor, Sparsify };

// throws std::invalid_argument on unknown names
Algo algo_from_name(const std::string& name);
std::string algo_name(Algo a);

struct ExperimentConfig {
  Algo algo = Algo::Full;
  EpsilonLedger eps = EpsilonLedger::desk();
  PipelineOptions pipeline;
  uint64_t seed = 1;
  int64_t trials = 1;
  int threads = 1;
  double sparsify_c = 4.0;  // Algo::Sparsify list-size constant
};

struct TrialRow {
  int64_t trial = 0;
  std::string phase;
  int64_t rounds = 0;
  int64_t colored = 0;
  int64_t bad = 0;
  int64_t max_bad_component = 0;
  int64_t conflicts = 0;
};

struct ExperimentResult {
  std::vector<TrialRow> rows;
  int64_t runs = 0;       // algorithm invocations, for the safety tally
  int64_t conflicts = 0;  // summed over rows; any nonzero is a bug
};

// Each trial runs the configured algorithm on a fresh state and appends one
// row per phase plus a "total" row. Engine conflicts surface as EngineError
// and abort the experiment: a conflict is a bug, not data.
ExperimentResult run_experiment(const D1lcInstance& inst,
                                const ExperimentConfig& cfg);

// header + one line per row, stable field order, no floating point
std::string experiment_csv(const ExperimentResult& r);

// size of the largest connected component of Bad nodes (0 when none)
int64_t max_bad_component(const SimState& s);

}  // namespace d1lc
