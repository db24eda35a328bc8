#pragma once
// Deterministic counter-based randomness. Every (node, round, tag) triple
// hashes with the master seed into an independent stream, so outcomes do not
// depend on scheduling or thread count, and a node's stream can be rewired
// (per-node seed override) without touching anyone else's draws.

#include <cstdint>
#include <vector>

namespace d1lc {

// murmur3 finalizer: full avalanche on 64 bits
inline uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

inline uint64_t hash_combine(uint64_t h, uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

class StreamRng {
 public:
  StreamRng(uint64_t master, int64_t node, int64_t round, uint64_t tag = 0);
  explicit StreamRng(uint64_t raw) : state_(raw) {}

  uint64_t next() {
    ctr_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_ ^ ctr_);
  }

  // uniform in [0, bound); bias below bound/2^64
  uint64_t below(uint64_t bound);

  // true with probability num/den (up to the same negligible bias)
  bool chance(long long num, long long den) {
    if (num <= 0) return false;
    if (num >= den) return true;
    return below(uint64_t(den)) < uint64_t(num);
  }

  double unit() { return double(next() >> 11) * 0x1.0p-53; }

  void shuffle(std::vector<int32_t>& v);  // Fisher-Yates

  // k distinct indices from [0, n), ascending (Floyd's algorithm)
  std::vector<int64_t> distinct_indices(int64_t k, int64_t n);

 private:
  uint64_t state_ = 0;
  uint64_t ctr_ = 0;
};

}  // namespace d1lc
