#pragma once
// Almost-clique decomposition (ACD), the sparse-node classifier, and the
// dense-side structure (cliques, leaders, outliers, inliers).
//
// The decomposition uses the friendship-threshold construction: u and v are
// friends iff adjacent and |N(u) cap N(v)| >= (1-eps_f) max(d_u, d_v); a node
// is eligible iff at least (1-eps_f) d_v of its neighbors are friends; the
// candidate cliques are the connected components of the friendship graph on
// eligible nodes. Components violating the size/backdegree properties are
// dissolved, and the remainder must be sparse or uneven. When some node is
// neither, the construction retries with eps_f doubled and eps_spa halved, a
// bounded number of times, and finally reports DecompositionFailure.

#include "d1lc/graph.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/ledger.hpp"
#include "d1lc/metrics.hpp"
#include "d1lc/rat.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace d1lc {

struct DecompositionFailure : std::runtime_error {
  explicit DecompositionFailure(const std::string& msg)
      : std::runtime_error(msg) {}
};

enum class NodeClass : uint8_t { Sparse, Uneven, Dense };

struct AcdPartition {
  std::vector<NodeClass> cls;
  std::vector<int32_t> clique_id;  // -1 unless Dense
  std::vector<std::vector<int32_t>> cliques;
  // effective thresholds after the retry ladder
  Rat eps_f_eff, eps_spa_eff, eps_acd_eff;
  int attempts = 1;

  bool is_dense(int32_t v) const { return cls[v] == NodeClass::Dense; }
};

// Throws DecompositionFailure when the ladder is exhausted.
AcdPartition compute_acd(const Graph& g, const EpsilonLedger& eps,
                         const CommonNeighbors* cn = nullptr,
                         int max_attempts = 4);

// Re-checks the defining properties of the partition against the graph:
// sparse nodes are eps_spa_eff-sparse, uneven nodes eps_spa_eff-uneven,
// and each clique C satisfies d_v <= (1+eps_acd_eff)|C| and
// (1+eps_acd_eff)|N_C(v)| >= |C| for all members. Returns human-readable
// violations (empty means clean).
std::vector<std::string> verify_acd(const Graph& g, const AcdPartition& part,
                                    const CommonNeighbors* cn = nullptr);

// --- sparse-node classifier -----------------------------------------------

// Wave assignment for the sparse pipeline. Uneven nodes ride the Easy wave;
// dense nodes are NotSparse.
enum class SparseWave : uint8_t { NotSparse, Easy, Heavy, Start, Tough };

struct SparseClassification {
  std::vector<SparseWave> wave;
  // predicate breakdown, for inspection and tests (sparse nodes only,
  // false elsewhere)
  std::vector<bool> balanced;
  std::vector<bool> discrepant;  // or strongly-uneven in the Uneven variant
  std::vector<bool> heavy;
};

// Which predicate fills the "discrepant" slot of the easy wave: the default
// uses discrepancy >= eps_hat * d_v; the Uneven variant replaces it with
// unevenness >= 2 sqrt(eps_hat) * d_v.
enum class ClassifierVariant : uint8_t { Discrepancy, Unevenness };

SparseClassification classify_sparse(
    const D1lcInstance& inst, const AcdPartition& part,
    const EpsilonLedger& eps,
    ClassifierVariant variant = ClassifierVariant::Discrepancy);

// Heavy-color machinery, exposed for tests: a color is heavy over S when
// H(c) = sum_{u in S, c in psi_u} 1/|psi_u| reaches 1/eps_hc. Returns the
// heavy colors and, via total_mass, the sum of their weights.
std::vector<int32_t> heavy_colors(const D1lcInstance& inst,
                                  std::span<const int32_t> S, const Rat& eps_hc,
                                  RatSum* total_mass = nullptr);

// --- dense structure --------------------------------------------------------

struct CliqueRoles {
  int32_t leader = -1;
  std::vector<int32_t> outliers;  // sorted, includes leader
  std::vector<int32_t> inliers;   // sorted, C minus outliers
};

// Everything the dense pipeline needs, computed once per decomposition.
// All metrics live in the full graph: a dense node's sparse and uneven
// neighbors count toward its external degree, sparsity, and discrepancy.
struct DenseStructure {
  Graph h;                          // induced subgraph on dense nodes
  std::vector<int32_t> to_h;        // -1 for non-dense
  std::vector<int32_t> to_g;        // h-id -> g-id
  std::vector<int64_t> external;    // e_v: neighbors outside own clique
  std::vector<int64_t> anti;        // a_v: |C_v \ N(v) \ {v}|
  std::vector<RatSum> slackability;         // sigma-bar_v (discrepancy-based)
  std::vector<RatSum> strong_slackability;  // sigma_v (unevenness-based)
  std::vector<CliqueRoles> roles;           // per clique
  std::vector<int64_t> clique_max_degree;   // Delta_C, max degree in G
  std::vector<RatSum> clique_slackability;  // sigma-bar_C of the leader
  // indexed by g-id; fields above indexed by g-id except per-clique ones
};

// cn, when given, must be built over inst.graph; omitting it builds one.
DenseStructure build_dense_structure(const D1lcInstance& inst,
                                     const AcdPartition& part,
                                     const CommonNeighbors* cn = nullptr);

// Inequality checks on the dense structure (exact rational comparisons).
// Each returns violation descriptions; empty means the property holds.

// anti-neighbor bound: a_v (1 - 3 eps_acd) <= 2 sigma_v for every dense v.
// Skipped (returns empty) when 1 - 3 eps_acd <= 0.
std::vector<std::string> check_anti_neighbor_bound(const DenseStructure& ds,
                                                   const AcdPartition& part);

// inlier bound: for every inlier u of clique C with leader x,
// e_u <= 12 sigma_x and |N(u) symdiff N(x) minus {u,x}| <= 12 sigma_x.
std::vector<std::string> check_inlier_bounds(const Graph& g,
                                             const DenseStructure& ds,
                                             const AcdPartition& part);

// external-degree ratio: e_v <= c_ext sigma_v is reported empirically; the
// exact part is that sigma_v = 0 forces e_v = 0. Returns violations of the
// zero case and writes the largest finite ratio seen (0 when none).
std::vector<std::string> check_external_zero_case(const DenseStructure& ds,
                                                  const AcdPartition& part,
                                                  double* max_ratio = nullptr);

}  // namespace d1lc
