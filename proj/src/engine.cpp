#include "d1lc/engine.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace d1lc {

namespace {

constexpr uint64_t kRoundSalt = 0x9E3779B97F4A7C15ull;

int32_t palette_pos(const std::vector<int32_t>& pal, int32_t c) {
  auto it = std::lower_bound(pal.begin(), pal.end(), c);
  if (it == pal.end() || *it != c) return -1;
  return int32_t(it - pal.begin());
}

}  // namespace

SimState::SimState(const D1lcInstance& inst, uint64_t seed)
    : inst_(&inst), seed_(seed) {
  const int32_t n = inst.graph.n();
  status_.assign(n, NodeStatus::Uncolored);
  color_.assign(n, -1);
  uncolored_deg_.resize(n);
  for (int32_t v = 0; v < n; ++v) uncolored_deg_[v] = inst.graph.degree(v);

  pal_off_.resize(n + 1);
  live_.resize(n);
  pal_off_[0] = 0;
  for (int32_t v = 0; v < n; ++v) {
    live_[v] = int32_t(inst.palettes[v].size());
    pal_off_[v + 1] = pal_off_[v] + (live_[v] + 63) / 64;
  }
  pal_bits_.assign(pal_off_[n], ~uint64_t(0));
  for (int32_t v = 0; v < n; ++v) {
    int32_t tail = live_[v] % 64;
    if (live_[v] > 0 && tail != 0) {
      pal_bits_[pal_off_[v + 1] - 1] = (uint64_t(1) << tail) - 1;
    }
  }

  try_stamp_.assign(n, 0);
  try_index_.assign(n, -1);
  transcript_ = mix64(uint64_t(n) ^ mix64(uint64_t(inst.graph.m())));
}

bool SimState::palette_contains(int32_t v, int32_t c) const {
  int32_t pos = palette_pos(inst_->palettes[v], c);
  if (pos < 0) return false;
  return (pal_bits_[pal_off_[v] + pos / 64] >> (pos % 64)) & 1;
}

int32_t SimState::palette_lowest(int32_t v) const {
  const uint64_t* w = pal_bits_.data() + pal_off_[v];
  int64_t words = pal_off_[v + 1] - pal_off_[v];
  for (int64_t i = 0; i < words; ++i) {
    if (w[i]) {
      return inst_->palettes[v][i * 64 + std::countr_zero(w[i])];
    }
  }
  return -1;
}

std::vector<int32_t> SimState::palette_values(int32_t v) const {
  std::vector<int32_t> out;
  out.reserve(live_[v]);
  const uint64_t* w = pal_bits_.data() + pal_off_[v];
  int64_t words = pal_off_[v + 1] - pal_off_[v];
  for (int64_t i = 0; i < words; ++i) {
    uint64_t bits = w[i];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(inst_->palettes[v][i * 64 + b]);
      bits &= bits - 1;
    }
  }
  return out;
}

int32_t SimState::palette_sample(int32_t v, StreamRng& rng) const {
  const auto& orig = inst_->palettes[v];
  if (live_[v] <= 0) throw EngineError("sampling from empty palette");
  const uint64_t* w = pal_bits_.data() + pal_off_[v];
  // rejection over original positions; dense palettes accept immediately
  for (int attempt = 0; attempt < 40; ++attempt) {
    uint64_t pos = rng.below(orig.size());
    if ((w[pos / 64] >> (pos % 64)) & 1) return orig[pos];
  }
  // exact fallback: pick the k-th live color
  uint64_t k = rng.below(uint64_t(live_[v]));
  int64_t words = pal_off_[v + 1] - pal_off_[v];
  for (int64_t i = 0; i < words; ++i) {
    int pc = std::popcount(w[i]);
    if (k >= uint64_t(pc)) {
      k -= pc;
      continue;
    }
    uint64_t bits = w[i];
    while (k--) bits &= bits - 1;
    return orig[i * 64 + std::countr_zero(bits)];
  }
  throw EngineError("palette bitmap count out of sync");
}

std::vector<int32_t> SimState::palette_sample_distinct(int32_t v, int64_t k,
                                                       StreamRng& rng) const {
  std::vector<int32_t> out;
  if (k >= live_[v]) {
    out = palette_values(v);
    return out;
  }
  out.reserve(k);
  // rejection with a sorted membership check; k is far below the live count
  // in every caller, so collisions are rare
  int64_t cap = 8 * k + 64;
  while (int64_t(out.size()) < k && cap-- > 0) {
    int32_t c = palette_sample(v, rng);
    auto it = std::lower_bound(out.begin(), out.end(), c);
    if (it == out.end() || *it != c) out.insert(it, c);
  }
  while (int64_t(out.size()) < k) {
    // fallback: walk live colors and take what is still missing (keeps the
    // call terminating even when k is close to the live count)
    for (int32_t c : palette_values(v)) {
      auto it = std::lower_bound(out.begin(), out.end(), c);
      if (it == out.end() || *it != c) {
        out.insert(it, c);
        if (int64_t(out.size()) == k) break;
      }
    }
  }
  return out;
}

StreamRng SimState::rng_at(int32_t v, int64_t round, uint64_t tag) const {
  auto it = seed_override_.find(v);
  uint64_t master = it == seed_override_.end() ? seed_ : it->second;
  return StreamRng(master, v, round, tag);
}

void SimState::apply_commit(int32_t v, int32_t c) {
  if (status_[v] == NodeStatus::Colored) {
    throw EngineError("node " + std::to_string(v) + " committed twice");
  }
  int32_t pos = palette_pos(inst_->palettes[v], c);
  bool live = pos >= 0 && ((pal_bits_[pal_off_[v] + pos / 64] >> (pos % 64)) & 1);
  if (!live) {
    ++conflicts_;
    throw EngineError("node " + std::to_string(v) + " committed color " +
                      std::to_string(c) + " outside its current palette");
  }
  status_[v] = NodeStatus::Colored;
  color_[v] = c;
  ++commits_;
  transcript_ = mix64(transcript_ ^ (uint64_t(round_) * kRoundSalt) ^
                      (uint64_t(uint32_t(v)) << 32 | uint32_t(c)));
  for (int32_t u : inst_->graph.neighbors(v)) {
    --uncolored_deg_[u];
    int32_t up = palette_pos(inst_->palettes[u], c);
    if (up >= 0) {
      uint64_t& word = pal_bits_[pal_off_[u] + up / 64];
      uint64_t bit = uint64_t(1) << (up % 64);
      if (word & bit) {
        word &= ~bit;
        --live_[u];
      }
    }
  }
}

void SimState::commit(int32_t v, int32_t c) { apply_commit(v, c); }

bool SimState::greedy_commit(int32_t v) {
  int32_t c = palette_lowest(v);
  if (c < 0) {
    throw EngineError("greedy: node " + std::to_string(v) +
                      " has an empty palette");
  }
  apply_commit(v, c);
  return true;
}

void SimState::mark_bad(int32_t v) {
  if (status_[v] == NodeStatus::Colored) {
    throw EngineError("marking a colored node bad");
  }
  status_[v] = NodeStatus::Bad;
}

int64_t SimState::run_round(const std::vector<ColorTry>& tries) {
  ++stamp_;
  for (size_t i = 0; i < tries.size(); ++i) {
    int32_t v = tries[i].node;
    if (status_[v] == NodeStatus::Colored) {
      throw EngineError("colored node proposing");
    }
    if (try_stamp_[v] == stamp_) throw EngineError("duplicate proposal");
    try_stamp_[v] = stamp_;
    try_index_[v] = int32_t(i);
  }

  std::vector<char> wins(tries.size(), 0);
  auto evaluate = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      const ColorTry& t = tries[i];
      bool ok = true;
      for (int32_t u : inst_->graph.neighbors(t.node)) {
        if (try_stamp_[u] != stamp_) continue;
        const ColorTry& o = tries[try_index_[u]];
        if (o.rank <= t.rank && o.color == t.color) {
          ok = false;
          break;
        }
      }
      wins[i] = ok;
    }
  };
  if (threads > 1 && tries.size() >= 2048) {
    size_t nt = size_t(threads);
    std::vector<std::thread> pool;
    size_t chunk = (tries.size() + nt - 1) / nt;
    for (size_t t = 0; t < nt; ++t) {
      size_t lo = t * chunk, hi = std::min(tries.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(evaluate, lo, hi);
    }
    for (auto& th : pool) th.join();
  } else {
    evaluate(0, tries.size());
  }

  // winners commit in ascending node id
  std::vector<int32_t> order;
  order.reserve(tries.size());
  for (size_t i = 0; i < tries.size(); ++i) {
    if (wins[i]) order.push_back(int32_t(i));
  }
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    return tries[a].node < tries[b].node;
  });
  for (int32_t i : order) apply_commit(tries[i].node, tries[i].color);
  ++round_;
  return int64_t(order.size());
}

int64_t SimState::run_set_round(const std::vector<SetTry>& tries) {
  ++stamp_;
  for (size_t i = 0; i < tries.size(); ++i) {
    int32_t v = tries[i].node;
    if (status_[v] == NodeStatus::Colored) {
      throw EngineError("colored node proposing");
    }
    if (try_stamp_[v] == stamp_) throw EngineError("duplicate proposal");
    try_stamp_[v] = stamp_;
    try_index_[v] = int32_t(i);
  }

  std::vector<int32_t> pick(tries.size(), -1);
  auto evaluate = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      const SetTry& t = tries[i];
      for (int32_t c : t.colors) {
        bool blocked = false;
        for (int32_t u : inst_->graph.neighbors(t.node)) {
          if (try_stamp_[u] != stamp_) continue;
          const auto& xu = tries[try_index_[u]].colors;
          if (std::binary_search(xu.begin(), xu.end(), c)) {
            blocked = true;
            break;
          }
        }
        if (!blocked) {
          pick[i] = c;
          break;
        }
      }
    }
  };
  if (threads > 1 && tries.size() >= 2048) {
    size_t nt = size_t(threads);
    std::vector<std::thread> pool;
    size_t chunk = (tries.size() + nt - 1) / nt;
    for (size_t t = 0; t < nt; ++t) {
      size_t lo = t * chunk, hi = std::min(tries.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(evaluate, lo, hi);
    }
    for (auto& th : pool) th.join();
  } else {
    evaluate(0, tries.size());
  }

  std::vector<int32_t> order;
  for (size_t i = 0; i < tries.size(); ++i) {
    if (pick[i] >= 0) order.push_back(int32_t(i));
  }
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    return tries[a].node < tries[b].node;
  });
  for (int32_t i : order) apply_commit(tries[i].node, pick[i]);
  ++round_;
  return int64_t(order.size());
}

}  // namespace d1lc
