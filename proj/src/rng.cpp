#include "d1lc/rng.hpp"

#include <algorithm>
#include <cassert>

namespace d1lc {

StreamRng::StreamRng(uint64_t master, int64_t node, int64_t round, uint64_t tag) {
  uint64_t h = mix64(master ^ 0x8f1bbcdcbfa53e0bull);
  h = hash_combine(h, uint64_t(node));
  h = hash_combine(h, uint64_t(round));
  h = hash_combine(h, tag);
  state_ = h;
}

uint64_t StreamRng::below(uint64_t bound) {
  assert(bound > 0);
  // multiply-shift map of a 64-bit draw onto [0, bound)
  unsigned __int128 wide = (unsigned __int128)next() * bound;
  return uint64_t(wide >> 64);
}

void StreamRng::shuffle(std::vector<int32_t>& v) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = size_t(below(i));
    std::swap(v[i - 1], v[j]);
  }
}

std::vector<int64_t> StreamRng::distinct_indices(int64_t k, int64_t n) {
  assert(k >= 0 && k <= n);
  // Floyd: for j in n-k..n-1, draw t in [0..j], insert t or j if t taken.
  std::vector<int64_t> picked;
  picked.reserve(size_t(k));
  for (int64_t j = n - k; j < n; ++j) {
    int64_t t = int64_t(below(uint64_t(j) + 1));
    auto it = std::lower_bound(picked.begin(), picked.end(), t);
    if (it != picked.end() && *it == t) {
      auto jt = std::lower_bound(picked.begin(), picked.end(), j);
      picked.insert(jt, j);
    } else {
      picked.insert(it, t);
    }
  }
  return picked;
}

}  // namespace d1lc
