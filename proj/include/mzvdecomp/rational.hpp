#ifndef MZVDECOMP_RATIONAL_HPP
#define MZVDECOMP_RATIONAL_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "errors.hpp"

namespace mzvdecomp {

// Exact rational number backed by GMP. The stored value is always in lowest
// terms with a positive denominator, so equal values have equal limbs.
class Rational {
public:
  Rational() = default;
  Rational(long v) : q_(v) {} // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0)
      fail("DivisionByZero", "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(const mpz_class &z) : q_(z) {}
  Rational(const mpz_class &num, const mpz_class &den) {
    if (den == 0)
      fail("DivisionByZero", "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "a", "-a" and "a/b".
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos)
        return Rational(mpz_class(s, 10));
      return Rational(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
    } catch (const std::invalid_argument &) {
      fail("SyntaxError", "malformed rational literal '" + s + "'");
    }
  }

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class &get() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational inverse() const {
    if (is_zero())
      fail("DivisionByZero", "inverse of zero");
    return Rational(mpq_class(1) / q_);
  }

  Rational pow(long e) const {
    if (e < 0)
      return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    Rational r;
    r.q_ = mpq_class(n, d);
    return r;
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
  Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
  Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
  Rational &operator/=(const Rational &o) {
    if (o.is_zero())
      fail("DivisionByZero", "division by zero rational");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

  friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const {
    if (q_.get_den() == 1)
      return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  double to_double() const { return q_.get_d(); }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

private:
  mpq_class q_;
};

inline Rational abs(const Rational &r) { return r.sign() < 0 ? -r : r; }

// Binomial coefficient C(n, k) for n possibly negative, k >= 0.
inline Rational binomial(long n, long k) {
  if (k < 0)
    return Rational(0);
  mpz_class num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return Rational(num, den);
}

} // namespace mzvdecomp

#endif // MZVDECOMP_RATIONAL_HPP
