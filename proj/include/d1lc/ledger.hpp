#pragma once
// The epsilon ledger: every threshold constant the decomposition, classifier
// and pipelines consume, collected in one struct so experiments can rescale
// them coherently. Two stock profiles:
//
//   desk():     eps_acd = 1/5 with the quadratic cascade below, so that
//               desk-scale graphs (n in the thousands) actually produce
//               nonempty dense and sparse parts.
//   faithful(): eps_acd = 1/125 and the analysis-grade inequalities hold;
//               sizes where this bites are far beyond desk scale, so this
//               profile is exercised by constraint checks, not simulations.
//
// Cascade used by desk(): eps_spa = eps_acd^2/2, eps_ub = eps_acd^2/4,
// eps_hat = eps_ub^2/100, eps_hc = eps_hat^2/540.

#include "d1lc/rat.hpp"

#include <cstdint>
#include <string>

namespace d1lc {

struct EpsilonLedger {
  Rat eps_acd;   // almost-clique decomposition quality
  Rat eps_spa;   // sparsity threshold (eps_spa * d_v)
  Rat eps_ub;    // unbalanced-neighbor fraction
  Rat eps_hat;   // classifier mass threshold (eps_hat * d_v)
  Rat eps_hc;    // heavy color threshold is 1/eps_hc
  double ell_exponent = 2.1;   // ell(Delta) = ceil(log2(Delta)^ell_exponent)
  int64_t degree_floor = 32;   // smallest degree class handled head-on

  static EpsilonLedger desk();
  static EpsilonLedger faithful();

  // eps_f for the friendship construction is eps_acd / 3
  Rat eps_friend() const { return eps_acd / Rat(3); }

  // ell(Delta) = max(1, ceil(log2(max(Delta,2))^ell_exponent))
  int64_t ell(int64_t max_degree) const;

  // The inequality set the analysis needs. desk() fails these by design;
  // faithful() must satisfy them (unit-tested).
  bool satisfies_faithful_constraints(std::string* why = nullptr) const;
};

}  // namespace d1lc
