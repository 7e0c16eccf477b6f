#ifndef MZVDECOMP_SCALAR_HPP
#define MZVDECOMP_SCALAR_HPP

#include <concepts>
#include <string>

#include "bigfloat.hpp"
#include "cyclotomic.hpp"
#include "rational.hpp"

namespace mzvdecomp {

// The coefficient field of a problem: Q (order 1) or Q(zeta_m).
struct Field {
  int order = 1;

  bool is_rational() const { return order <= 2; }

  std::string to_string() const {
    return is_rational() ? "Q" : "Q(zeta_" + std::to_string(order) + ")";
  }

  // "Q" or "Q(zeta_m)".
  static Field parse(const std::string &text) {
    if (text == "Q")
      return Field{1};
    const std::string prefix = "Q(zeta_";
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + 1 && text.back() == ')') {
      std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
      if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
        int m = std::stoi(digits);
        if (m >= 1)
          return Field{m};
      }
    }
    fail("SyntaxError", "unknown field '" + text + "' (expected Q or Q(zeta_m))");
  }

  friend bool operator==(const Field &, const Field &) = default;
};

template <class S>
concept ExactScalar = requires(const S &a, const S &b, const Rational &q) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.to_string() } -> std::convertible_to<std::string>;
  S(q);
};

static_assert(ExactScalar<Rational>);
static_assert(ExactScalar<Cyclotomic>);

// Complex embedding sending zeta_m to exp(2 pi i / m). The absolute error of
// the returned value is at most 2^(8 - bits) * max(1, sum |c_k|): the working
// precision is bits + 32 and each of the phi(m) terms loses at most a few ulps.
inline ComplexFloat embed_numeric(const Rational &a, unsigned bits) {
  PrecisionGuard guard(bits + 32);
  return {to_bigfloat(a), BigFloat(0)};
}

inline ComplexFloat embed_numeric(const Cyclotomic &a, unsigned bits) {
  PrecisionGuard guard(bits + 32);
  if (a.is_rational())
    return {to_bigfloat(a.coeffs()[0]), BigFloat(0)};
  const BigFloat two_pi = 2 * big_pi();
  ComplexFloat out{BigFloat(0), BigFloat(0)};
  const auto &c = a.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero())
      continue;
    BigFloat angle = two_pi * static_cast<long>(k) / a.order();
    BigFloat v = to_bigfloat(c[k]);
    out.re += v * cos(angle);
    out.im += v * sin(angle);
  }
  return out;
}

template <class S>
S scalar_power(const S &base, long e) {
  S result(Rational(1)), b = base;
  if (e < 0) {
    b = S(Rational(1)) / b;
    e = -e;
  }
  while (e > 0) {
    if (e & 1)
      result = result * b;
    b = b * b;
    e >>= 1;
  }
  return result;
}

// Rational -> S conversion that works uniformly in templates.
template <class S>
S from_rational(const Rational &q) {
  return S(q);
}

} // namespace mzvdecomp

#endif // MZVDECOMP_SCALAR_HPP
