#include "d1lc/rat.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <stdexcept>

namespace d1lc {

using boost::multiprecision::cpp_int;

namespace {

long long checked_ll(const cpp_int& v, const char* what) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    throw std::overflow_error(std::string("Rat overflow in ") + what);
  }
  return v.convert_to<long long>();
}

Rat make_normalized(cpp_int num, cpp_int den, const char* what) {
  if (den == 0) throw std::domain_error("Rat with zero denominator");
  if (den < 0) { num = -num; den = -den; }
  cpp_int g = gcd(num < 0 ? cpp_int(-num) : num, den);
  if (g > 1) { num /= g; den /= g; }
  Rat r;
  r.num = checked_ll(num, what);
  r.den = checked_ll(den, what);
  return r;
}

}  // namespace

Rat::Rat(long long n, long long d) {
  *this = make_normalized(cpp_int(n), cpp_int(d), "ctor");
}

Rat Rat::operator+(const Rat& o) const {
  return make_normalized(cpp_int(num) * o.den + cpp_int(o.num) * den,
                         cpp_int(den) * o.den, "+");
}

Rat Rat::operator-(const Rat& o) const {
  return make_normalized(cpp_int(num) * o.den - cpp_int(o.num) * den,
                         cpp_int(den) * o.den, "-");
}

Rat Rat::operator*(const Rat& o) const {
  return make_normalized(cpp_int(num) * o.num, cpp_int(den) * o.den, "*");
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw std::domain_error("Rat division by zero");
  return make_normalized(cpp_int(num) * o.den, cpp_int(den) * o.num, "/");
}

int Rat::cmp(const Rat& o) const {
  cpp_int l = cpp_int(num) * o.den;
  cpp_int r = cpp_int(o.num) * den;
  if (l < r) return -1;
  if (l > r) return 1;
  return 0;
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

void RatSum::add(long long num, long long den) {
  if (den <= 0) throw std::domain_error("RatSum term with non-positive denominator");
  if (num == 0) return;
  long long g = std::gcd(num < 0 ? -num : num, den);
  num /= g;
  den /= g;
  long long& slot = terms_[den];
  // per-denominator numerators are bounded by n * max|a_i| in practice; guard anyway
  if ((slot > 0 && num > std::numeric_limits<long long>::max() - slot) ||
      (slot < 0 && num < std::numeric_limits<long long>::min() - slot)) {
    throw std::overflow_error("RatSum numerator overflow");
  }
  slot += num;
  if (slot == 0) terms_.erase(den);
}

void RatSum::add(const RatSum& o) {
  for (const auto& [den, num] : o.terms_) add(num, den);
}

bool RatSum::zero() const { return terms_.empty(); }

namespace {

// exact value of a term map as a cpp_int pair (num, den)
std::pair<cpp_int, cpp_int> exact(const std::map<long long, long long>& terms) {
  cpp_int num = 0, den = 1;
  for (const auto& [d, n] : terms) {
    num = num * d + cpp_int(n) * den;
    den *= d;
    cpp_int g = gcd(num < 0 ? cpp_int(-num) : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  return {num, den};
}

int cmp_exact(const std::pair<cpp_int, cpp_int>& a,
              const std::pair<cpp_int, cpp_int>& b) {
  cpp_int l = a.first * b.second;
  cpp_int r = b.first * a.second;
  if (l < r) return -1;
  if (l > r) return 1;
  return 0;
}

}  // namespace

int RatSum::cmp(const Rat& o) const {
  return cmp_exact(exact(terms_), {cpp_int(o.num), cpp_int(o.den)});
}

int RatSum::cmp(const RatSum& o) const {
  return cmp_exact(exact(terms_), exact(o.terms_));
}

int RatSum::cmp_scaled(const RatSum& a, const RatSum& b, const Rat& k) {
  auto ea = exact(a.terms_);
  auto eb = exact(b.terms_);
  cpp_int l = ea.first * eb.second * k.den;
  cpp_int r = eb.first * ea.second * k.num;
  if (l < r) return -1;
  if (l > r) return 1;
  return 0;
}

int RatSum::cmp_square(const Rat& k) const {
  auto [num, den] = exact(terms_);
  cpp_int l = num * num * k.den;
  cpp_int r = cpp_int(k.num) * den * den;
  if (l < r) return -1;
  if (l > r) return 1;
  return 0;
}

std::string RatSum::str() const {
  auto [num, den] = exact(terms_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double RatSum::to_double() const {
  long double acc = 0;
  for (const auto& [den, num] : terms_) acc += (long double)num / (long double)den;
  return (double)acc;
}

}  // namespace d1lc
