#include "d1lc/gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "d1lc/rng.hpp"

namespace d1lc {

namespace {

using EdgeList = std::vector<std::pair<int32_t, int32_t>>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("gen: " + what);
}

// undirected edge key, also used for self-loop bookkeeping in the repair loop
uint64_t edge_key(int32_t u, int32_t v) {
  if (u > v) std::swap(u, v);
  return (uint64_t(uint32_t(u)) << 32) | uint32_t(v);
}

void append_clique(EdgeList& edges, int32_t first, int32_t count) {
  for (int32_t i = 0; i < count; ++i)
    for (int32_t j = i + 1; j < count; ++j)
      edges.emplace_back(first + i, first + j);
}

std::vector<int32_t> block(int32_t first, int32_t size) {
  std::vector<int32_t> out(size);
  for (int32_t i = 0; i < size; ++i) out[i] = first + i;
  return out;
}

}  // namespace

Graph gnp(int32_t n, double avg_degree, uint64_t seed) {
  require(n >= 0, "gnp: n must be non-negative");
  require(avg_degree >= 0, "gnp: average degree must be non-negative");
  if (n < 2) return Graph::from_edges(n, {});
  double p = std::min(avg_degree / double(n - 1), 1.0);
  EdgeList edges;
  edges.reserve(size_t(p * double(n) * double(n - 1) / 2 * 1.05) + 16);
  StreamRng rng(seed, 0, 0, kTagGen);
  if (p >= 1.0) {
    append_clique(edges, 0, n);
    return Graph::from_edges(n, edges);
  }
  if (p > 0) {
    // geometric jumps through the lexicographic pair order
    double logq = std::log1p(-p);
    int64_t v = 1, w = -1;
    while (v < n) {
      double r = rng.unit();
      w += 1 + int64_t(std::floor(std::log1p(-r) / logq));
      while (w >= v && v < n) {
        w -= v;
        ++v;
      }
      if (v < n) edges.emplace_back(int32_t(w), int32_t(v));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph complete_graph(int32_t n) {
  require(n >= 0, "complete_graph: n must be non-negative");
  EdgeList edges;
  edges.reserve(size_t(n) * std::max(n - 1, 0) / 2);
  append_clique(edges, 0, n);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(int32_t n) {
  require(n >= 3, "cycle_graph: need at least 3 nodes");
  EdgeList edges;
  edges.reserve(n);
  for (int32_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

Graph path_graph(int32_t n) {
  require(n >= 1, "path_graph: need at least 1 node");
  EdgeList edges;
  edges.reserve(n - 1);
  for (int32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph star_graph(int32_t leaves) {
  require(leaves >= 0, "star_graph: leaves must be non-negative");
  EdgeList edges;
  edges.reserve(leaves);
  for (int32_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, edges);
}

Graph union_of_cliques(int32_t k, int32_t count) {
  require(k >= 1 && count >= 1, "union_of_cliques: need k >= 1, count >= 1");
  EdgeList edges;
  edges.reserve(size_t(count) * k * (k - 1) / 2);
  for (int32_t c = 0; c < count; ++c) append_clique(edges, c * k, k);
  return Graph::from_edges(count * k, edges);
}

Graph random_regular(int32_t n, int32_t d, uint64_t seed) {
  require(n >= 1 && d >= 0 && d < n, "random_regular: need 0 <= d < n");
  require(int64_t(n) * d % 2 == 0, "random_regular: n*d must be even");
  // configuration model: pair up stubs, then swap defects away
  std::vector<int32_t> stubs(size_t(n) * d);
  for (int32_t v = 0; v < n; ++v)
    for (int32_t i = 0; i < d; ++i) stubs[size_t(v) * d + i] = v;
  StreamRng rng(seed, 0, 0, kTagGen);
  rng.shuffle(stubs);

  int64_t m = int64_t(n) * d / 2;
  EdgeList edges(m);
  std::unordered_map<uint64_t, int32_t> mult;
  mult.reserve(size_t(m) * 2);
  for (int64_t i = 0; i < m; ++i) {
    edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
    ++mult[edge_key(edges[i].first, edges[i].second)];
  }
  auto bad = [&](const std::pair<int32_t, int32_t>& e) {
    return e.first == e.second || mult[edge_key(e.first, e.second)] > 1;
  };

  // Each accepted swap replaces a defective edge and a random partner with
  // two fresh simple edges, so the defect count strictly decreases.
  int64_t budget = 200 * m + 10000;
  for (bool dirty = true; dirty;) {
    dirty = false;
    for (int64_t i = 0; i < m; ++i) {
      while (bad(edges[i])) {
        if (--budget < 0)
          throw GraphError("random_regular: defect repair did not converge");
        int64_t j = int64_t(rng.below(uint64_t(m)));
        if (j == i) continue;
        auto [u, v] = edges[i];
        auto [x, y] = edges[j];
        if (rng.below(2)) std::swap(x, y);
        if (u == x || v == y) continue;
        uint64_t ka = edge_key(u, x), kb = edge_key(v, y);
        if (ka == kb || mult[ka] > 0 || mult[kb] > 0) continue;
        --mult[edge_key(u, v)];
        --mult[edge_key(edges[j].first, edges[j].second)];
        ++mult[ka];
        ++mult[kb];
        edges[i] = {u, x};
        edges[j] = {v, y};
        dirty = true;
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph multipartite_matchings(int32_t parts, int32_t part_n, int32_t matchings,
                             uint64_t seed) {
  require(parts >= 2 && part_n >= 1 && matchings >= 0,
          "multipartite_matchings: need parts >= 2, part_n >= 1");
  EdgeList edges;
  edges.reserve(size_t(parts) * (parts - 1) / 2 * matchings * part_n);
  std::vector<int32_t> perm(part_n);
  int64_t round = 0;
  for (int32_t a = 0; a < parts; ++a)
    for (int32_t b = a + 1; b < parts; ++b)
      for (int32_t t = 0; t < matchings; ++t) {
        for (int32_t i = 0; i < part_n; ++i) perm[i] = i;
        StreamRng rng(seed, a * parts + b, round++, kTagGen);
        rng.shuffle(perm);
        for (int32_t i = 0; i < part_n; ++i)
          edges.emplace_back(a * part_n + i, b * part_n + perm[i]);
      }
  // two matchings between the same pair of parts can repeat an edge; dedup
  // in place rather than through a set (the set dominates memory at scale)
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(parts * part_n, edges);
}

std::vector<std::vector<int32_t>> make_palettes(const Graph& g,
                                                PaletteScheme scheme,
                                                int64_t param, uint64_t seed) {
  int32_t n = g.n();
  std::vector<std::vector<int32_t>> pals(n);
  switch (scheme) {
    case PaletteScheme::Identical: {
      int64_t need = n == 0 ? 1 : g.max_degree() + 1;
      int64_t size = param <= 0 ? need : param;
      require(size >= need, "make_palettes: identical palette smaller than "
                            "max degree + 1");
      auto shared = block(0, int32_t(size));
      for (int32_t v = 0; v < n; ++v) pals[v] = shared;
      break;
    }
    case PaletteScheme::DisjointBlocks: {
      int64_t at = 0;
      for (int32_t v = 0; v < n; ++v) {
        int32_t size = g.degree(v) + 1;
        pals[v] = block(int32_t(at), size);
        at += size;
      }
      break;
    }
    case PaletteScheme::Shifted: {
      int64_t stride = param <= 0 ? 1 : param;
      for (int32_t v = 0; v < n; ++v)
        pals[v] = block(int32_t(v * stride), g.degree(v) + 1);
      break;
    }
    case PaletteScheme::RandomFromSpace: {
      require(n == 0 || param >= g.max_degree() + 1,
              "make_palettes: color space smaller than max degree + 1");
      for (int32_t v = 0; v < n; ++v) {
        StreamRng rng(seed, v, 0, kTagGen);
        auto picks = rng.distinct_indices(g.degree(v) + 1, param);
        pals[v].reserve(picks.size());
        for (int64_t c : picks) pals[v].push_back(int32_t(c));
      }
      break;
    }
  }
  return pals;
}

D1lcInstance apex_cliques(int32_t k, int32_t t) {
  require(k >= 1 && t >= 1, "apex_cliques: need k >= 1, t >= 1");
  int32_t n = 1 + t * k;
  EdgeList edges;
  edges.reserve(size_t(t) * k * (k + 1) / 2);
  std::vector<std::vector<int32_t>> pals(n);
  std::vector<int32_t> apex_pal;
  for (int32_t c = 0; c < t; ++c) {
    int32_t first = 1 + c * k;
    append_clique(edges, first, k);
    auto blk = block(c * (k + 1), k + 1);
    for (int32_t i = 0; i < k; ++i) {
      edges.emplace_back(0, first + i);
      pals[first + i] = blk;
    }
    // drop the top color of every block after the first: the apex list is
    // exactly one more than its degree
    apex_pal.insert(apex_pal.end(), blk.begin(),
                    c == 0 ? blk.end() : blk.end() - 1);
  }
  pals[0] = std::move(apex_pal);
  return make_instance(Graph::from_edges(n, edges), std::move(pals));
}

D1lcInstance clique_pair(int32_t big, int32_t small, int32_t boosted,
                         int32_t apex) {
  require(big >= 3 && small >= 2, "clique_pair: need big >= 3, small >= 2");
  require(boosted >= 1 && boosted < big, "clique_pair: boosted out of range");
  require(apex >= boosted && apex < big,
          "clique_pair: apex must be an unboosted big-clique id");
  int32_t sat0 = big, priv0 = big + small, n = big + 2 * small;
  EdgeList edges;
  edges.reserve(size_t(big) * (big - 1) / 2 + size_t(small) * (small - 1) +
                size_t(boosted) * small + small);
  append_clique(edges, 0, big);
  append_clique(edges, sat0, small);
  append_clique(edges, priv0, small);
  for (int32_t b = 0; b < boosted; ++b)
    for (int32_t s = 0; s < small; ++s) edges.emplace_back(b, sat0 + s);
  for (int32_t s = 0; s < small; ++s) edges.emplace_back(apex, priv0 + s);

  std::vector<std::vector<int32_t>> pals(n);
  auto shared = block(0, big + small);
  for (int32_t v = 0; v < big; ++v) pals[v] = shared;
  auto sat_pal = block(big + small, small + boosted);
  for (int32_t s = 0; s < small; ++s) pals[sat0 + s] = sat_pal;
  auto priv_pal = block(big + 2 * small + boosted, small + 1);
  for (int32_t s = 0; s < small; ++s) pals[priv0 + s] = priv_pal;
  return make_instance(Graph::from_edges(n, edges), std::move(pals));
}

D1lcInstance heavy_apex(int32_t degree, int32_t mid_degree) {
  require(degree >= 1 && mid_degree >= 1, "heavy_apex: need positive degrees");
  int32_t leaves = mid_degree - 1;
  int32_t n = 1 + degree + degree * leaves;
  EdgeList edges;
  edges.reserve(size_t(degree) * mid_degree);
  std::vector<std::vector<int32_t>> pals(n);
  pals[0] = block(0, degree + 1);
  auto mid_pal = block(0, mid_degree + 1);
  int32_t next = 1 + degree, fresh = degree + 1;
  for (int32_t i = 1; i <= degree; ++i) {
    edges.emplace_back(0, i);
    pals[i] = mid_pal;
    for (int32_t j = 0; j < leaves; ++j) {
      edges.emplace_back(i, next);
      pals[next] = {fresh, fresh + 1};
      fresh += 2;
      ++next;
    }
  }
  return make_instance(Graph::from_edges(n, edges), std::move(pals));
}

D1lcInstance tough_apex(int32_t degree, int32_t mid_degree,
                        int32_t partner_degree, uint64_t seed) {
  require(degree >= 1 && partner_degree >= 0 &&
              partner_degree < std::min(degree, mid_degree),
          "tough_apex: need partner_degree < min(degree, mid_degree)");
  int32_t leaves = mid_degree - 1 - partner_degree;
  int32_t base = mid_degree + 1;
  int32_t n = 1 + degree + degree * leaves;
  EdgeList edges;
  edges.reserve(size_t(degree) * mid_degree);
  std::vector<std::vector<int32_t>> pals(n);
  pals[0] = block(0, degree + 1);
  auto mid_pal = block(0, base);
  for (auto [a, b] : random_regular(degree, partner_degree, seed).edge_list())
    edges.emplace_back(a + 1, b + 1);
  int32_t next = 1 + degree;
  for (int32_t i = 1; i <= degree; ++i) {
    edges.emplace_back(0, i);
    pals[i] = mid_pal;
    for (int32_t j = 0; j < leaves; ++j) {
      int32_t lo = (i + 2 * j) % base, hi = (i + 2 * j + 1) % base;
      edges.emplace_back(i, next);
      pals[next] = {std::min(lo, hi), std::max(lo, hi)};
      ++next;
    }
  }
  return make_instance(Graph::from_edges(n, edges), std::move(pals));
}

D1lcInstance perturbed_cliques(int32_t k, int32_t count) {
  require(k >= 2 && count >= 1, "perturbed_cliques: need k >= 2, count >= 1");
  EdgeList edges;
  edges.reserve(size_t(count) * k * (k - 1) / 2);
  std::vector<std::vector<int32_t>> pals(size_t(count) * k);
  for (int32_t c = 0; c < count; ++c) {
    append_clique(edges, c * k, k);
    for (int32_t i = 0; i < k; ++i) {
      // base block minus color i, plus a private color shared only with the
      // same position in the paired clique (c ^ 1), which is never adjacent
      std::vector<int32_t> pal;
      pal.reserve(k);
      for (int32_t q = 0; q < k; ++q)
        if (q != i) pal.push_back(q);
      pal.push_back(k + (c >> 1) * k + i);
      pals[size_t(c) * k + i] = std::move(pal);
    }
  }
  return make_instance(Graph::from_edges(count * k, edges), std::move(pals));
}

D1lcInstance clique_satellites(int32_t n, int32_t baits, int32_t mids,
                               int32_t sats, int32_t sat_n) {
  require(n >= 3 && sats >= 1 && sat_n >= 2, "clique_satellites: too small");
  require(baits >= 0 && mids >= 0 && 1 + baits + mids <= n,
          "clique_satellites: baits + mids exceed the clique");
  int32_t sat_total = sats * sat_n;
  EdgeList edges;
  edges.reserve(size_t(n) * (n - 1) / 2 +
                size_t(sats) * sat_n * (sat_n - 1) / 2 + 2 * baits + mids);
  append_clique(edges, 0, n);
  for (int32_t s = 0; s < sats; ++s) append_clique(edges, n + s * sat_n, sat_n);
  // ids 1..baits get two satellite edges, the next mids ids get one; edge
  // endpoints walk round-robin over all satellite nodes
  int64_t at = 0;
  auto next_sat = [&] { return n + int32_t(at++ % sat_total); };
  for (int32_t v = 1; v <= baits; ++v) {
    edges.emplace_back(v, next_sat());
    edges.emplace_back(v, next_sat());
  }
  for (int32_t v = baits + 1; v <= baits + mids; ++v)
    edges.emplace_back(v, next_sat());

  Graph g = Graph::from_edges(n + sat_total, edges);
  std::vector<std::vector<int32_t>> pals(g.n());
  int32_t main_top = 0;
  for (int32_t v = 0; v < n; ++v) main_top = std::max(main_top, g.degree(v));
  auto shared = block(0, main_top + 1);
  for (int32_t v = 0; v < n; ++v) pals[v] = shared;
  int32_t fresh = main_top + 1;
  for (int32_t s = 0; s < sats; ++s) {
    int32_t top = 0;
    for (int32_t i = 0; i < sat_n; ++i)
      top = std::max(top, g.degree(n + s * sat_n + i));
    auto blk = block(fresh, top + 1);
    fresh += top + 1;
    for (int32_t i = 0; i < sat_n; ++i) pals[n + s * sat_n + i] = blk;
  }
  return make_instance(std::move(g), std::move(pals));
}

D1lcInstance planted_balanced(int32_t degree, double nb_prob, uint64_t seed) {
  require(degree >= 1, "planted_balanced: need degree >= 1");
  require(nb_prob >= 0 && nb_prob <= 1, "planted_balanced: bad probability");
  int32_t n = degree + 1;
  EdgeList edges;
  edges.reserve(size_t(nb_prob * double(degree) * (degree - 1) / 2 * 1.05) +
                degree + 16);
  StreamRng rng(seed, 0, 0, kTagGen);
  for (int32_t v = 1; v <= degree; ++v) {
    edges.emplace_back(0, v);
    for (int32_t w = v + 1; w <= degree; ++w)
      if (rng.unit() < nb_prob) edges.emplace_back(v, w);
  }
  Graph g = Graph::from_edges(n, edges);
  auto pals = make_palettes(g, PaletteScheme::Identical, 0, seed);
  return make_instance(std::move(g), std::move(pals));
}

}  // namespace d1lc
