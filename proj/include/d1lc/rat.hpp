#pragma once
// Exact rational arithmetic for structural metrics.
//
// Metric sums have the shape sum_i a_i/b_i where every b_i is a small positive
// integer (a palette size or degree+1). RatSum accumulates numerators per
// distinct denominator, so values stay in int64 while building. The common
// denominator only materializes inside exact comparisons, which run on
// arbitrary-precision integers in the .cpp.

#include <cstdint>
#include <map>
#include <string>

namespace d1lc {

// Normalized fraction, den > 0. Throws std::overflow_error if a result does
// not fit; callers only form small threshold-sized values.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}  // NOLINT: implicit on purpose
  Rat(long long n, long long d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;

  // exact three-way compare, overflow-safe
  int cmp(const Rat& o) const;
  bool operator==(const Rat& o) const { return cmp(o) == 0; }
  bool operator!=(const Rat& o) const { return cmp(o) != 0; }
  bool operator<(const Rat& o) const { return cmp(o) < 0; }
  bool operator<=(const Rat& o) const { return cmp(o) <= 0; }
  bool operator>(const Rat& o) const { return cmp(o) > 0; }
  bool operator>=(const Rat& o) const { return cmp(o) >= 0; }

  double to_double() const { return double(num) / double(den); }
  std::string str() const;
};

class RatSum {
 public:
  RatSum() = default;
  RatSum(const Rat& r) { add(r); }  // NOLINT

  void add(long long num, long long den);
  void add(const Rat& r) { add(r.num, r.den); }
  void add(const RatSum& o);

  bool zero() const;     // exact
  size_t terms() const { return terms_.size(); }

  int cmp(const Rat& o) const;
  int cmp(const RatSum& o) const;
  bool operator<(const Rat& o) const { return cmp(o) < 0; }
  bool operator<=(const Rat& o) const { return cmp(o) <= 0; }
  bool operator>(const Rat& o) const { return cmp(o) > 0; }
  bool operator>=(const Rat& o) const { return cmp(o) >= 0; }
  bool operator==(const Rat& o) const { return cmp(o) == 0; }
  bool operator<(const RatSum& o) const { return cmp(o) < 0; }
  bool operator<=(const RatSum& o) const { return cmp(o) <= 0; }

  // exact value as "p/q" (normalized); to_double is for reporting only
  std::string str() const;
  double to_double() const;

  // exact compare of a against b*k (used for constant-factor lemma checks)
  static int cmp_scaled(const RatSum& a, const RatSum& b, const Rat& k);

  // exact sign of (this)^2 - k; lets callers test a nonnegative sum against
  // a square-root threshold by squaring both sides
  int cmp_square(const Rat& k) const;

 private:
  std::map<long long, long long> terms_;  // den -> summed num
};

}  // namespace d1lc
