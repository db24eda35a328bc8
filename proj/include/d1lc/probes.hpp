#pragma once
// Monte-Carlo probes for the structural claims behind the coloring phases.
// Each probe freezes one instance family, asserts the classification facts
// the claim needs (so a drifted generator fails loudly instead of testing
// nothing), then reruns the relevant phase across many engine seeds and
// checks a per-trial event. A probe refutes its claim only when the observed
// failure count is statistically incompatible with the claimed rate.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "d1lc/engine.hpp"
#include "d1lc/instance.hpp"

namespace d1lc {

// Exact lower tail P(Binomial(n, p) <= k), summed in long double log space.
double binom_lower_tail(int64_t n, double p, int64_t k);

// Non-refutation rule for an event claimed to hold with probability at least
// `theta` per trial: fail only when P(Binomial(trials, theta) <= successes)
// drops below 0.01. At 1000 trials and theta 0.99 this tolerates 17 misses.
bool statistical_pass(int64_t trials, int64_t failures, double theta,
                      double* p_value = nullptr);

struct ProbeOutcome {
  std::string name;
  std::string claim;      // one-line statement of the per-trial event
  int64_t trials = 0;
  int64_t failures = 0;
  double theta = 0.99;    // claimed per-trial success probability
  double p_value = 1.0;   // binomial lower tail at the observed success count
  bool pass = false;
  int64_t runs = 0;       // engine rounds executed across all trials
  int64_t conflicts = 0;  // engine conflicts detected across all trials
  std::string notes;      // measured means, fitted constants, side checks
};

struct ProbeSpec {
  std::string name;
  std::string claim;
  int64_t default_trials = 1000;
};

// Registered probes in listing order.
const std::vector<ProbeSpec>& probe_registry();

// Runs one probe by name; trials <= 0 selects the registered default.
// Unknown names throw std::invalid_argument; a probe whose frozen instance
// no longer matches its asserted classification throws std::runtime_error.
ProbeOutcome run_probe(const std::string& name, int64_t trials = 0,
                       uint64_t seed = 1);

// Runs `algorithm` twice on fresh states with master seed `seed`: once as-is
// and once with every node at graph distance > 2 from `v` reseeded from
// `adversary_seed`. Returns whether v ended Colored in (baseline, reseeded).
// A node's fate after one synchronous round may depend only on its two-hop
// neighborhood, so any divergence is an engine defect.
std::pair<bool, bool> two_hop_independence_probe(
    const D1lcInstance& inst, const std::function<void(SimState&)>& algorithm,
    int32_t v, uint64_t seed, uint64_t adversary_seed);

}  // namespace d1lc
