#pragma once
// Synchronous LOCAL-model simulation state.
//
// A round has two phases: every participant evaluates its proposal against
// its neighbors' proposals (parallelizable, reads only start-of-round state),
// then winners are committed sequentially in ascending node id. Commit order
// inside a round never affects the outcome (two adjacent winners can't carry
// the same color), so transcripts are identical for any thread count.
//
// Current palettes are stored as bitmaps over each node's original palette:
// removal is O(1) and repeated removals of the same color collapse, which is
// exactly how same-colored non-adjacent neighbors generate slack.

#include "d1lc/instance.hpp"
#include "d1lc/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace d1lc {

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NodeStatus : uint8_t { Uncolored, Colored, Bad };

// single-color proposal; lower rank wins ties of attention: u is considered
// by v iff rank_u <= rank_v, so equal ranks give the symmetric semantics
struct ColorTry {
  int32_t node;
  int32_t color;
  int32_t rank = 0;
};

// set proposal for multi-trial rounds; colors must be sorted
struct SetTry {
  int32_t node;
  std::vector<int32_t> colors;
};

class SimState {
 public:
  SimState(const D1lcInstance& inst, uint64_t seed);

  const D1lcInstance& instance() const { return *inst_; }
  int32_t n() const { return int32_t(status_.size()); }
  NodeStatus status(int32_t v) const { return status_[v]; }
  int32_t color(int32_t v) const { return color_[v]; }
  int32_t uncolored_degree(int32_t v) const { return uncolored_deg_[v]; }
  int64_t round() const { return round_; }
  int64_t commit_count() const { return commits_; }
  int64_t conflicts_detected() const { return conflicts_; }
  uint64_t transcript() const { return transcript_; }
  uint64_t seed() const { return seed_; }

  // current palette
  int32_t palette_size(int32_t v) const { return live_[v]; }
  bool palette_contains(int32_t v, int32_t c) const;
  int32_t palette_lowest(int32_t v) const;            // -1 if empty
  std::vector<int32_t> palette_values(int32_t v) const;
  int32_t palette_sample(int32_t v, StreamRng& rng) const;       // uniform live color
  std::vector<int32_t> palette_sample_distinct(int32_t v, int64_t k,
                                               StreamRng& rng) const;

  // slack s(v) = |current palette| - (uncolored or bad neighbors)
  int64_t slack(int32_t v) const {
    return int64_t(live_[v]) - uncolored_deg_[v];
  }

  // deterministic per-(node, round, tag) stream; the probe hook below swaps
  // one node's master seed without touching anyone else's streams
  StreamRng rng(int32_t v, uint64_t tag) const { return rng_at(v, round_, tag); }
  StreamRng rng_at(int32_t v, int64_t round, uint64_t tag) const;
  void set_seed_override(int32_t v, uint64_t seed) { seed_override_[v] = seed; }

  // one synchronous single-color round; returns number of commits
  int64_t run_round(const std::vector<ColorTry>& tries);
  // one synchronous set-proposal round: each winner takes the lowest color of
  // its set missing from all participating neighbors' sets
  int64_t run_set_round(const std::vector<SetTry>& tries);

  // sequential operations (no round counting)
  void commit(int32_t v, int32_t c);
  bool greedy_commit(int32_t v);  // lowest live color; throws if palette empty
  void mark_bad(int32_t v);

  int threads = 1;  // proposal evaluation only; results never depend on it

 private:
  void apply_commit(int32_t v, int32_t c);

  const D1lcInstance* inst_;
  uint64_t seed_;
  std::vector<NodeStatus> status_;
  std::vector<int32_t> color_;
  std::vector<int32_t> uncolored_deg_;

  // palette bitmaps: per node, words over positions of the original palette
  std::vector<int64_t> pal_off_;     // word offset per node
  std::vector<uint64_t> pal_bits_;
  std::vector<int32_t> live_;

  int64_t round_ = 0;
  int64_t commits_ = 0;
  int64_t conflicts_ = 0;
  uint64_t transcript_ = 0;
  std::unordered_map<int32_t, uint64_t> seed_override_;

  // scratch reused across rounds (stamped, never cleared)
  std::vector<int64_t> try_stamp_;
  std::vector<int32_t> try_index_;
  int64_t stamp_ = 0;
};

}  // namespace d1lc
