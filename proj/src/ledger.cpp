#include "d1lc/ledger.hpp"

#include <algorithm>
#include <cmath>

namespace d1lc {

EpsilonLedger EpsilonLedger::desk() {
  EpsilonLedger e;
  e.eps_acd = Rat(1, 5);
  e.eps_spa = Rat(1, 50);    // eps_acd^2 / 2
  e.eps_ub = Rat(1, 100);    // eps_acd^2 / 4
  e.eps_hat = Rat(1, 1000000);              // eps_ub^2 / 100
  e.eps_hc = Rat(1, 540000000000000LL);     // eps_hat^2 / 540
  return e;
}

EpsilonLedger EpsilonLedger::faithful() {
  EpsilonLedger e;
  e.eps_acd = Rat(1, 125);
  e.eps_spa = Rat(1, 250);
  e.eps_ub = Rat(1, 500);
  e.eps_hat = Rat(1, 25000000LL);           // eps_ub^2 / 100
  e.eps_hc = Rat(1, 337500000000000000LL);  // eps_hat^2 / 540
  return e;
}

int64_t EpsilonLedger::ell(int64_t max_degree) const {
  double lg = std::log2((double)std::max<int64_t>(max_degree, 2));
  double val = std::pow(lg, ell_exponent);
  return std::max<int64_t>(1, (int64_t)std::ceil(val));
}

bool EpsilonLedger::satisfies_faithful_constraints(std::string* why) const {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (!(eps_acd <= Rat(1, 125))) return fail("eps_acd > 1/125");
  if (!(eps_spa >= Rat(2) * eps_ub)) return fail("eps_spa not >= 2*eps_ub");
  if (!(eps_hat <= Rat(1, 36))) return fail("eps_hat > 1/36");
  if (!(Rat(100) * eps_hat <= eps_ub * eps_ub))
    return fail("eps_hat > eps_ub^2/100");
  if (!(Rat(540) * eps_hc <= eps_hat * eps_hat))
    return fail("eps_hc > eps_hat^2/540");
  if (why) why->clear();
  return true;
}

}  // namespace d1lc
