#include "d1lc/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace d1lc {

namespace {

struct Search {
  const D1lcInstance& inst;
  std::vector<int32_t> order;   // most-constrained-first node order
  std::vector<int32_t> chosen;  // by node id, -1 while unassigned

  explicit Search(const D1lcInstance& in) : inst(in), chosen(in.graph.n(), -1) {
    order.resize(inst.graph.n());
    std::iota(order.begin(), order.end(), 0);
    // fewest spare colors first: ties broken by id for determinism
    std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
      auto spare = [&](int32_t v) {
        return int64_t(inst.palettes[v].size()) - inst.graph.degree(v);
      };
      return spare(a) < spare(b);
    });
  }

  bool ok_at(int32_t v, int32_t c) const {
    for (int32_t u : inst.graph.neighbors(v))
      if (chosen[u] == c) return false;
    return true;
  }

  bool go(size_t at) {
    if (at == order.size()) return true;
    int32_t v = order[at];
    for (int32_t c : inst.palettes[v]) {
      if (!ok_at(v, c)) continue;
      chosen[v] = c;
      if (go(at + 1)) return true;
      chosen[v] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int32_t>> brute_force_solve(const D1lcInstance& inst,
                                                      int32_t max_nodes) {
  if (inst.graph.n() > max_nodes)
    throw std::invalid_argument("brute_force_solve: instance above node cap");
  Search s(inst);
  if (!s.go(0)) return std::nullopt;
  return s.chosen;
}

bool verify_coloring(const D1lcInstance& inst, std::span<const int32_t> colors,
                     bool allow_uncolored, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (colors.size() != size_t(inst.graph.n()))
    return fail("color vector size does not match node count");
  for (int32_t v = 0; v < inst.graph.n(); ++v) {
    int32_t c = colors[v];
    if (c == -1) {
      if (allow_uncolored) continue;
      return fail("node " + std::to_string(v) + " is uncolored");
    }
    const auto& pal = inst.palettes[v];
    if (!std::binary_search(pal.begin(), pal.end(), c))
      return fail("node " + std::to_string(v) + " wears color " +
                  std::to_string(c) + " outside its palette");
  }
  for (auto [u, v] : inst.graph.edge_list())
    if (colors[u] != -1 && colors[u] == colors[v])
      return fail("edge " + std::to_string(u) + "-" + std::to_string(v) +
                  " is monochromatic in color " + std::to_string(colors[u]));
  return true;
}

}  // namespace d1lc
