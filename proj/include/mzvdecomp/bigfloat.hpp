#ifndef MZVDECOMP_BIGFLOAT_HPP
#define MZVDECOMP_BIGFLOAT_HPP

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "rational.hpp"

namespace mzvdecomp {

using BigFloat = boost::multiprecision::mpfr_float;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

// Sets the working precision for every BigFloat created in scope and restores
// the previous default on exit.
class PrecisionGuard {
public:
  explicit PrecisionGuard(unsigned bits) : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionGuard() { BigFloat::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard &) = delete;
  PrecisionGuard &operator=(const PrecisionGuard &) = delete;

private:
  unsigned saved_;
};

// pi at the current default precision (boost's constant cache can return a
// value computed at an earlier, lower precision).
inline BigFloat big_pi() {
  BigFloat x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

inline BigFloat to_bigfloat(const Rational &r) {
  BigFloat num(r.num().get_mpz_t());
  BigFloat den(r.den().get_mpz_t());
  return num / den;
}

struct ComplexFloat {
  BigFloat re;
  BigFloat im;
};

inline ComplexFloat operator+(const ComplexFloat &a, const ComplexFloat &b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexFloat operator-(const ComplexFloat &a, const ComplexFloat &b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexFloat operator*(const ComplexFloat &a, const ComplexFloat &b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline BigFloat abs(const ComplexFloat &z) { return sqrt(z.re * z.re + z.im * z.im); }

// Decimal text with a fixed number of significant digits.
inline std::string format_float(const BigFloat &x, int digits = 20) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

inline std::string format_bound(double b) {
  std::ostringstream os;
  os << std::setprecision(2) << b;
  return os.str();
}

inline double to_double(const BigFloat &x) { return x.convert_to<double>(); }

} // namespace mzvdecomp

#endif // MZVDECOMP_BIGFLOAT_HPP
