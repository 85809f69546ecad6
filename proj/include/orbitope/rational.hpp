#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace orbitope {

/// Arbitrary-precision integer (GMP-backed value type).
class Int {
 public:
  Int() : z_(0) {}
  Int(long v) : z_(v) {}  // NOLINT: implicit by design, mirrors built-in ints
  explicit Int(const std::string& s) : z_(s) {}
  explicit Int(mpz_class z) : z_(std::move(z)) {}

  const mpz_class& raw() const { return z_; }

  Int operator-() const { return Int(mpz_class(-z_)); }
  Int& operator+=(const Int& o) { z_ += o.z_; return *this; }
  Int& operator-=(const Int& o) { z_ -= o.z_; return *this; }
  Int& operator*=(const Int& o) { z_ *= o.z_; return *this; }

  friend Int operator+(Int a, const Int& b) { return a += b; }
  friend Int operator-(Int a, const Int& b) { return a -= b; }
  friend Int operator*(Int a, const Int& b) { return a *= b; }
  friend bool operator==(const Int& a, const Int& b) { return a.z_ == b.z_; }
  friend bool operator!=(const Int& a, const Int& b) { return a.z_ != b.z_; }
  friend bool operator<(const Int& a, const Int& b) { return a.z_ < b.z_; }
  friend bool operator<=(const Int& a, const Int& b) { return a.z_ <= b.z_; }
  friend bool operator>(const Int& a, const Int& b) { return a.z_ > b.z_; }
  friend bool operator>=(const Int& a, const Int& b) { return a.z_ >= b.z_; }

  bool fits_long() const { return z_.fits_slong_p(); }
  long to_long() const {
    if (!fits_long()) throw std::overflow_error("Int does not fit in long: " + str());
    return z_.get_si();
  }
  double to_double() const { return z_.get_d(); }
  std::string str() const { return z_.get_str(); }

 private:
  mpz_class z_;
};

/// Exact rational scalar. Always stored in lowest terms with positive denominator.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long v) : q_(v) {}  // NOLINT: implicit by design
  Rat(long num, long den) : q_(num, den) { canonical(); }
  Rat(const Int& num, const Int& den) : q_(num.raw(), den.raw()) { canonical(); }
  explicit Rat(const Int& num) : q_(num.raw()) {}
  explicit Rat(mpq_class q) : q_(std::move(q)) { canonical(); }

  /// Parses "num/den" or "num".
  static Rat parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    return Rat(std::move(q));
  }

  Int num() const { return Int(q_.get_num()); }
  Int den() const { return Int(q_.get_den()); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  Rat abs() const { return sign() < 0 ? -*this : *this; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }

  /// "num/den", or just "num" when the denominator is 1.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

 private:
  void canonical() {
    if (q_.get_den() == 0) throw std::domain_error("Rat with zero denominator");
    q_.canonicalize();
  }
  mpq_class q_;
};

/// Exact binomial coefficient; returns 0 for b < 0 or b > a.
inline Int binomial(long a, long b) {
  if (b < 0 || b > a) return Int(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return Int(std::move(r));
}

inline Int factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Int(std::move(r));
}

/// (2k-1)!! = 1*3*5*...*(2k-1), with the empty product (-1)!! = 1 at k = 0.
inline Rat odd_double_factorial(long k) {
  if (k < 0) throw std::invalid_argument("odd_double_factorial: k < 0");
  mpz_class r(1);
  for (long i = 1; i <= k; ++i) r *= 2 * i - 1;
  return Rat(Int(std::move(r)));
}

}  // namespace orbitope
