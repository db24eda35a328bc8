#include "d1lc/acd.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace d1lc {

namespace {

struct UnionFind {
  std::vector<int32_t> parent;
  explicit UnionFind(int32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int32_t find(int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// common * q >= (q - p) * bound, i.e. common >= (1 - p/q) * bound
bool at_least_one_minus_eps(int64_t common, int64_t bound, const Rat& eps) {
  return common * eps.den >= (eps.den - eps.num) * bound;
}

}  // namespace

AcdPartition compute_acd(const Graph& g, const EpsilonLedger& eps,
                         const CommonNeighbors* cn, int max_attempts) {
  std::optional<CommonNeighbors> own;
  if (!cn) {
    own.emplace(g);
    cn = &*own;
  }
  const int32_t n = g.n();
  auto edges = g.edge_list();

  Rat eps_f = eps.eps_friend();
  std::string last_why;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rat scale(int64_t(1) << attempt);
    Rat eps_f_eff = eps_f * scale;
    if (eps_f_eff > Rat(1, 3)) eps_f_eff = Rat(1, 3);
    Rat eps_spa_eff = eps.eps_spa / scale;
    Rat eps_acd_eff = Rat(3) * eps_f_eff;

    // friendship edges and per-node friend degrees
    std::vector<int32_t> friend_deg(n, 0);
    std::vector<char> is_friend_edge(edges.size(), 0);
    for (size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      int64_t bound = std::max(g.degree(u), g.degree(v));
      if (at_least_one_minus_eps(cn->count(u, v), bound, eps_f_eff)) {
        is_friend_edge[i] = 1;
        ++friend_deg[u];
        ++friend_deg[v];
      }
    }
    std::vector<char> eligible(n, 0);
    for (int32_t v = 0; v < n; ++v) {
      eligible[v] =
          at_least_one_minus_eps(friend_deg[v], g.degree(v), eps_f_eff);
    }

    // candidate cliques: components of the friendship graph on eligible nodes
    UnionFind uf(n);
    for (size_t i = 0; i < edges.size(); ++i) {
      if (is_friend_edge[i] && eligible[edges[i].first] &&
          eligible[edges[i].second]) {
        uf.unite(edges[i].first, edges[i].second);
      }
    }
    std::vector<std::vector<int32_t>> comps;
    {
      std::vector<int32_t> comp_of(n, -1);
      for (int32_t v = 0; v < n; ++v) {
        if (!eligible[v]) continue;
        int32_t r = uf.find(v);
        if (comp_of[r] < 0) {
          comp_of[r] = int32_t(comps.size());
          comps.emplace_back();
        }
        comps[comp_of[r]].push_back(v);
      }
    }

    AcdPartition part;
    part.cls.assign(n, NodeClass::Sparse);
    part.clique_id.assign(n, -1);
    part.eps_f_eff = eps_f_eff;
    part.eps_spa_eff = eps_spa_eff;
    part.eps_acd_eff = eps_acd_eff;
    part.attempts = attempt + 1;

    // keep components that satisfy the size and backdegree properties
    std::vector<char> in_comp(n, 0);
    for (auto& comp : comps) {
      std::sort(comp.begin(), comp.end());
      for (int32_t v : comp) in_comp[v] = 1;
      int64_t size = int64_t(comp.size());
      bool ok = true;
      for (int32_t v : comp) {
        // d_v <= (1 + eps_acd) |C|
        if (int64_t(g.degree(v)) * eps_acd_eff.den >
            (eps_acd_eff.den + eps_acd_eff.num) * size) {
          ok = false;
          break;
        }
        int64_t in_c = 0;
        for (int32_t u : g.neighbors(v)) in_c += in_comp[u];
        // (1 + eps_acd) |N_C(v)| >= |C|
        if ((eps_acd_eff.den + eps_acd_eff.num) * in_c < eps_acd_eff.den * size) {
          ok = false;
          break;
        }
      }
      for (int32_t v : comp) in_comp[v] = 0;
      if (ok) {
        int32_t id = int32_t(part.cliques.size());
        for (int32_t v : comp) {
          part.cls[v] = NodeClass::Dense;
          part.clique_id[v] = id;
        }
        part.cliques.push_back(std::move(comp));
      }
    }

    // classify the remainder; any node that is neither sparse nor uneven
    // sends us to the next rung of the ladder
    int64_t stuck = 0;
    for (int32_t v = 0; v < n; ++v) {
      if (part.cls[v] == NodeClass::Dense) continue;
      Rat need = eps_spa_eff * Rat(g.degree(v));
      if (sparsity(g, *cn, v) >= need) {
        part.cls[v] = NodeClass::Sparse;
      } else if (unevenness(g, v) >= need) {
        part.cls[v] = NodeClass::Uneven;
      } else {
        ++stuck;
      }
    }
    if (stuck == 0) return part;
    last_why = "attempt " + std::to_string(attempt + 1) + ": " +
               std::to_string(stuck) + " nodes neither sparse nor uneven";
  }
  throw DecompositionFailure("decomposition failed after " +
                             std::to_string(max_attempts) +
                             " attempts (last: " + last_why + ")");
}

std::vector<std::string> verify_acd(const Graph& g, const AcdPartition& part,
                                    const CommonNeighbors* cn) {
  std::optional<CommonNeighbors> own;
  if (!cn) {
    own.emplace(g);
    cn = &*own;
  }
  std::vector<std::string> bad;
  const int32_t n = g.n();
  if (int32_t(part.cls.size()) != n || int32_t(part.clique_id.size()) != n) {
    bad.push_back("partition arrays sized differently from the graph");
    return bad;
  }

  // membership consistency
  std::vector<char> seen(n, 0);
  for (size_t c = 0; c < part.cliques.size(); ++c) {
    if (part.cliques[c].empty()) bad.push_back("empty clique " + std::to_string(c));
    for (int32_t v : part.cliques[c]) {
      if (seen[v]) bad.push_back("node " + std::to_string(v) + " in two cliques");
      seen[v] = 1;
      if (part.cls[v] != NodeClass::Dense || part.clique_id[v] != int32_t(c)) {
        bad.push_back("node " + std::to_string(v) + " clique id mismatch");
      }
    }
  }
  for (int32_t v = 0; v < n; ++v) {
    if ((part.cls[v] == NodeClass::Dense) != bool(seen[v])) {
      bad.push_back("node " + std::to_string(v) + " dense flag inconsistent");
    }
  }
  if (!bad.empty()) return bad;

  const Rat& ea = part.eps_acd_eff;
  std::vector<char> in_c(n, 0);
  for (const auto& comp : part.cliques) {
    for (int32_t v : comp) in_c[v] = 1;
    int64_t size = int64_t(comp.size());
    for (int32_t v : comp) {
      if (int64_t(g.degree(v)) * ea.den > (ea.den + ea.num) * size) {
        bad.push_back("clique member " + std::to_string(v) +
                      " degree exceeds (1+eps)|C|");
      }
      int64_t nc = 0;
      for (int32_t u : g.neighbors(v)) nc += in_c[u];
      if ((ea.den + ea.num) * nc < ea.den * size) {
        bad.push_back("clique member " + std::to_string(v) +
                      " has too few neighbors inside its clique");
      }
    }
    for (int32_t v : comp) in_c[v] = 0;
  }

  for (int32_t v = 0; v < n; ++v) {
    if (part.cls[v] == NodeClass::Dense) continue;
    Rat need = part.eps_spa_eff * Rat(g.degree(v));
    if (part.cls[v] == NodeClass::Sparse) {
      if (!(sparsity(g, *cn, v) >= need)) {
        bad.push_back("sparse node " + std::to_string(v) + " below threshold");
      }
    } else {
      if (!(unevenness(g, v) >= need)) {
        bad.push_back("uneven node " + std::to_string(v) + " below threshold");
      }
    }
  }
  return bad;
}

std::vector<int32_t> heavy_colors(const D1lcInstance& inst,
                                  std::span<const int32_t> S, const Rat& eps_hc,
                                  RatSum* total_mass) {
  Rat threshold(eps_hc.den, eps_hc.num);  // 1 / eps_hc
  std::vector<int32_t> heavy;
  RatSum mass;
  for (auto& [c, w] : color_weights(inst, S)) {
    if (w >= threshold) {
      heavy.push_back(c);
      mass.add(w);
    }
  }
  if (total_mass) *total_mass = std::move(mass);
  return heavy;
}

SparseClassification classify_sparse(const D1lcInstance& inst,
                                     const AcdPartition& part,
                                     const EpsilonLedger& eps,
                                     ClassifierVariant variant) {
  const Graph& g = inst.graph;
  const int32_t n = g.n();
  SparseClassification out;
  out.wave.assign(n, SparseWave::NotSparse);
  out.balanced.assign(n, false);
  out.discrepant.assign(n, false);
  out.heavy.assign(n, false);

  DisparityMemo memo(inst);
  const Rat inv_hc(eps.eps_hc.den, eps.eps_hc.num);

  // pass 1: the easy wave (uneven nodes ride it by definition)
  for (int32_t v = 0; v < n; ++v) {
    if (part.cls[v] == NodeClass::Uneven) {
      out.wave[v] = SparseWave::Easy;
      continue;
    }
    if (part.cls[v] != NodeClass::Sparse) continue;
    int64_t dv = g.degree(v);
    Rat mass_need = eps.eps_hat * Rat(dv);

    int64_t high = 0, dense_nbrs = 0;
    for (int32_t u : g.neighbors(v)) {
      if (3 * int64_t(g.degree(u)) >= 2 * dv) ++high;
      if (part.cls[u] == NodeClass::Dense) ++dense_nbrs;
    }
    if (at_least_one_minus_eps(high, dv, eps.eps_ub)) {
      out.balanced[v] = true;
      out.wave[v] = SparseWave::Easy;
      continue;
    }
    bool pred;
    if (variant == ClassifierVariant::Discrepancy) {
      pred = discrepancy(inst, v, &memo) >= mass_need;
    } else {
      // unevenness >= 2 sqrt(eps_hat) d_v, squared to stay exact
      Rat sq = Rat(4) * eps.eps_hat * Rat(dv) * Rat(dv);
      pred = unevenness(g, v).cmp_square(sq) >= 0;
    }
    if (pred) {
      out.discrepant[v] = true;
      out.wave[v] = SparseWave::Easy;
      continue;
    }
    if (Rat(dense_nbrs) >= mass_need) out.wave[v] = SparseWave::Easy;
  }

  // pass 2: heavy nodes among the remaining sparse ones
  for (int32_t v = 0; v < n; ++v) {
    if (part.cls[v] != NodeClass::Sparse || out.wave[v] != SparseWave::NotSparse)
      continue;
    int64_t dv = g.degree(v);
    if (dv == 0) continue;
    int64_t min_pal = INT64_MAX;
    for (int32_t u : g.neighbors(v)) {
      min_pal = std::min(min_pal, int64_t(inst.palettes[u].size()));
    }
    // every weight is at most d_v / min|psi|; if even that misses the heavy
    // threshold there is nothing to sum
    if (min_pal > 0 && Rat(dv, min_pal) < inv_hc) continue;
    RatSum mass;
    heavy_colors(inst, g.neighbors(v), eps.eps_hc, &mass);
    if (mass >= eps.eps_hat * Rat(dv)) {
      out.heavy[v] = true;
      out.wave[v] = SparseWave::Heavy;
    }
  }

  // pass 3: start nodes (enough easy neighbors), rest tough
  for (int32_t v = 0; v < n; ++v) {
    if (part.cls[v] != NodeClass::Sparse || out.wave[v] != SparseWave::NotSparse)
      continue;
    int64_t easy_nbrs = 0;
    for (int32_t u : g.neighbors(v)) {
      if (out.wave[u] == SparseWave::Easy) ++easy_nbrs;
    }
    out.wave[v] = Rat(easy_nbrs) >= eps.eps_hat * Rat(g.degree(v))
                      ? SparseWave::Start
                      : SparseWave::Tough;
  }
  return out;
}

DenseStructure build_dense_structure(const D1lcInstance& inst,
                                     const AcdPartition& part,
                                     const CommonNeighbors* cn) {
  const Graph& g = inst.graph;
  const int32_t n = g.n();
  DenseStructure ds;

  std::vector<int32_t> dense_nodes;
  for (int32_t v = 0; v < n; ++v) {
    if (part.cls[v] == NodeClass::Dense) dense_nodes.push_back(v);
  }
  ds.h = g.induced(dense_nodes, &ds.to_h, &ds.to_g);

  // every metric below lives in the full graph: sparse and uneven neighbors
  // count toward external degree, sparsity, and discrepancy alike
  std::optional<CommonNeighbors> own_cn;
  if (!cn) cn = &own_cn.emplace(g);

  ds.external.assign(n, 0);
  ds.anti.assign(n, 0);
  ds.slackability.assign(n, RatSum());
  ds.strong_slackability.assign(n, RatSum());

  DisparityMemo memo(inst);
  for (int32_t v : dense_nodes) {
    int32_t cid = part.clique_id[v];
    int64_t in_clique = 0;
    for (int32_t u : g.neighbors(v)) {
      if (part.clique_id[u] == cid) {
        ++in_clique;
      } else {
        ++ds.external[v];
      }
    }
    ds.anti[v] = int64_t(part.cliques[cid].size()) - 1 - in_clique;

    Rat zeta = sparsity(g, *cn, v);
    RatSum disc = discrepancy(inst, v, &memo);
    RatSum unev = unevenness(g, v);
    disc.add(zeta);
    unev.add(zeta);
    ds.slackability[v] = std::move(disc);
    ds.strong_slackability[v] = std::move(unev);
  }

  // per-clique roles
  ds.roles.resize(part.cliques.size());
  ds.clique_max_degree.resize(part.cliques.size());
  ds.clique_slackability.resize(part.cliques.size());
  for (size_t c = 0; c < part.cliques.size(); ++c) {
    const auto& comp = part.cliques[c];
    CliqueRoles& roles = ds.roles[c];

    int32_t leader = comp[0];
    int64_t max_deg = 0;
    for (int32_t v : comp) {
      max_deg = std::max<int64_t>(max_deg, g.degree(v));
      if (ds.slackability[v] < ds.slackability[leader]) leader = v;
    }
    roles.leader = leader;
    ds.clique_max_degree[c] = max_deg;
    ds.clique_slackability[c] = ds.slackability[leader];

    int64_t k_a =
        (std::max<int64_t>(g.degree(leader), int64_t(comp.size())) + 2) / 3;
    int64_t k_b = (int64_t(comp.size()) + 5) / 6;

    std::vector<char> out_flag(comp.size(), 0);
    auto flag_of = [&](int32_t v) -> char& {
      return out_flag[std::lower_bound(comp.begin(), comp.end(), v) -
                      comp.begin()];
    };

    // (a) fewest common neighbors with the leader, ties by id
    std::vector<std::pair<int64_t, int32_t>> by_common;
    by_common.reserve(comp.size());
    for (int32_t v : comp) {
      if (v == leader) continue;
      by_common.emplace_back(cn->count(v, leader), v);
    }
    std::sort(by_common.begin(), by_common.end());
    for (int64_t i = 0; i < std::min<int64_t>(k_a, by_common.size()); ++i) {
      flag_of(by_common[i].second) = 1;
    }

    // (b) largest original degree, ties by id
    std::vector<std::pair<int64_t, int32_t>> by_degree;
    by_degree.reserve(comp.size());
    for (int32_t v : comp) {
      if (v == leader) continue;
      by_degree.emplace_back(-int64_t(g.degree(v)), v);
    }
    std::sort(by_degree.begin(), by_degree.end());
    for (int64_t i = 0; i < std::min<int64_t>(k_b, by_degree.size()); ++i) {
      flag_of(by_degree[i].second) = 1;
    }

    // (c) anti-neighbors of the leader, and the leader itself
    for (int32_t v : comp) {
      if (v != leader && !g.adjacent(v, leader)) flag_of(v) = 1;
    }
    flag_of(leader) = 1;

    for (size_t i = 0; i < comp.size(); ++i) {
      (out_flag[i] ? roles.outliers : roles.inliers).push_back(comp[i]);
    }
  }
  return ds;
}

std::vector<std::string> check_anti_neighbor_bound(const DenseStructure& ds,
                                                   const AcdPartition& part) {
  std::vector<std::string> bad;
  Rat coeff = Rat(1) - Rat(3) * part.eps_acd_eff;
  if (coeff <= Rat(0)) return bad;  // bound vacuous at this relaxation
  for (int32_t v = 0; v < int32_t(part.cls.size()); ++v) {
    if (part.cls[v] != NodeClass::Dense) continue;
    RatSum lhs;
    lhs.add(coeff * Rat(ds.anti[v]));
    if (RatSum::cmp_scaled(lhs, ds.strong_slackability[v], Rat(2)) > 0) {
      bad.push_back("node " + std::to_string(v) + ": a_v (1-3eps) = " +
                    lhs.str() + " exceeds 2 sigma_v = twice " +
                    ds.strong_slackability[v].str());
    }
  }
  return bad;
}

std::vector<std::string> check_inlier_bounds(const Graph& g,
                                             const DenseStructure& ds,
                                             const AcdPartition&) {
  std::vector<std::string> bad;
  for (size_t c = 0; c < ds.roles.size(); ++c) {
    int32_t x = ds.roles[c].leader;
    const RatSum& sx = ds.strong_slackability[x];
    auto nx = g.neighbors(x);
    for (int32_t u : ds.roles[c].inliers) {
      RatSum e_u;
      if (ds.external[u] > 0) e_u.add(ds.external[u], 1);
      if (RatSum::cmp_scaled(e_u, sx, Rat(12)) > 0) {
        bad.push_back("inlier " + std::to_string(u) + ": e_u = " +
                      std::to_string(ds.external[u]) +
                      " exceeds 12 sigma_x, sigma_x = " + sx.str());
      }
      // |N(u) symdiff N(x)| minus the endpoints themselves
      auto nu = g.neighbors(u);
      int64_t symdiff = 0;
      size_t i = 0, j = 0;
      while (i < nu.size() || j < nx.size()) {
        if (j == nx.size() || (i < nu.size() && nu[i] < nx[j])) {
          ++symdiff;
          ++i;
        } else if (i == nu.size() || nx[j] < nu[i]) {
          ++symdiff;
          ++j;
        } else {
          ++i;
          ++j;
        }
      }
      if (g.adjacent(u, x)) symdiff -= 2;
      RatSum sd;
      if (symdiff > 0) sd.add(symdiff, 1);
      if (RatSum::cmp_scaled(sd, sx, Rat(12)) > 0) {
        bad.push_back("inlier " + std::to_string(u) +
                      ": neighborhood difference " + std::to_string(symdiff) +
                      " exceeds 12 sigma_x, sigma_x = " + sx.str());
      }
    }
  }
  return bad;
}

std::vector<std::string> check_external_zero_case(const DenseStructure& ds,
                                                  const AcdPartition& part,
                                                  double* max_ratio) {
  std::vector<std::string> bad;
  double worst = 0;
  for (int32_t v = 0; v < int32_t(part.cls.size()); ++v) {
    if (part.cls[v] != NodeClass::Dense) continue;
    if (ds.strong_slackability[v].zero()) {
      if (ds.external[v] != 0) {
        bad.push_back("node " + std::to_string(v) + ": sigma_v = 0 but e_v = " +
                      std::to_string(ds.external[v]));
      }
    } else if (ds.external[v] > 0) {
      worst = std::max(
          worst, double(ds.external[v]) / ds.strong_slackability[v].to_double());
    }
  }
  if (max_ratio) *max_ratio = worst;
  return bad;
}

}  // namespace d1lc
