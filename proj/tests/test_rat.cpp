#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "d1lc/rat.hpp"

#include <stdexcept>

using d1lc::Rat;
using d1lc::RatSum;

TEST_CASE("Rat normalizes and compares exactly") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(0, 7).num == 0);
  CHECK(Rat(0, 7).den == 1);
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(7, 3) > Rat(2));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rat(1, 2) / Rat(0), std::domain_error);
  CHECK(Rat(5, 3).str() == "5/3");
  CHECK(Rat(6, 3).str() == "2");
}

TEST_CASE("RatSum is exact where doubles are not") {
  // 0.1 + 0.2 != 0.3 in binary floating point; 1/10 + 2/10 == 3/10 here
  RatSum s;
  s.add(1, 10);
  s.add(2, 10);
  CHECK(s == Rat(3, 10));
  CHECK(s.str() == "3/10");

  // harmonic-style sum with many denominators stays exact
  RatSum h;
  for (long long d = 1; d <= 50; ++d) h.add(1, d);
  RatSum h2;
  for (long long d = 50; d >= 1; --d) h2.add(1, d);
  CHECK(h.cmp(h2) == 0);
  // H(50) is strictly between 4 and 5
  CHECK(h > Rat(4));
  CHECK(h < Rat(5));
}

TEST_CASE("RatSum cancellation and zero detection") {
  RatSum s;
  s.add(1, 3);
  s.add(1, 6);
  s.add(-1, 2);
  CHECK(s.zero());
  CHECK(s == Rat(0));
  s.add(1, 7);
  CHECK_FALSE(s.zero());
  CHECK(s == Rat(1, 7));
}

TEST_CASE("RatSum merges term groups") {
  RatSum a, b;
  a.add(3, 4);
  b.add(1, 4);
  b.add(1, 2);
  a.add(b);
  CHECK(a == Rat(3, 2));
  CHECK(a.terms() <= 2);
}

TEST_CASE("RatSum::cmp_scaled compares a against k*b") {
  RatSum a, b;
  a.add(7, 2);   // 3.5
  b.add(1, 1);   // 1
  CHECK(RatSum::cmp_scaled(a, b, Rat(7, 2)) == 0);
  CHECK(RatSum::cmp_scaled(a, b, Rat(4)) < 0);
  CHECK(RatSum::cmp_scaled(a, b, Rat(3)) > 0);
  // zero right-hand side: a <= 0*b only when a is zero
  RatSum z;
  CHECK(RatSum::cmp_scaled(z, b, Rat(0)) == 0);
  CHECK(RatSum::cmp_scaled(a, b, Rat(0)) > 0);
}

TEST_CASE("RatSum survives large grouped accumulation") {
  // one million terms of 1/3 plus one million of 1/7, compared exactly
  RatSum s;
  for (int i = 0; i < 1000000; ++i) s.add(1, 3);
  for (int i = 0; i < 1000000; ++i) s.add(1, 7);
  CHECK(s.terms() == 2);
  CHECK(s == Rat(10000000, 21));
}

TEST_CASE("rejects bad denominators") {
  RatSum s;
  CHECK_THROWS_AS(s.add(1, 0), std::domain_error);
  CHECK_THROWS_AS(s.add(1, -2), std::domain_error);
}
