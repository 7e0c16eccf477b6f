#ifndef MZVDECOMP_CYCLOTOMIC_HPP
#define MZVDECOMP_CYCLOTOMIC_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace mzvdecomp {

// Dense univariate polynomial helpers over Q, coefficients stored low -> high.
namespace upoly {

using Poly = std::vector<Rational>;

inline void trim(Poly &a) {
  while (!a.empty() && a.back().is_zero())
    a.pop_back();
}

inline int degree(const Poly &a) { return static_cast<int>(a.size()) - 1; }

inline Poly mul(const Poly &a, const Poly &b) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero())
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline Poly sub(Poly a, const Poly &b) {
  if (a.size() < b.size())
    a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] -= b[i];
  trim(a);
  return a;
}

// Euclidean division a = q*b + r; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly &b) {
  trim(a);
  int db = degree(b);
  if (db < 0)
    fail("DivisionByZero", "polynomial division by zero");
  Poly q;
  if (degree(a) >= db)
    q.assign(static_cast<std::size_t>(degree(a) - db + 1), Rational(0));
  Rational lead_inv = b.back().inverse();
  while (degree(a) >= db) {
    int shift = degree(a) - db;
    Rational f = a.back() * lead_inv;
    q[static_cast<std::size_t>(shift)] = f;
    for (int i = 0; i <= db; ++i)
      a[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
    trim(a);
  }
  trim(q);
  return {q, a};
}

} // namespace upoly

// Integer coefficients (low -> high) of the m-th cyclotomic polynomial,
// computed by dividing x^m - 1 by every Phi_d with d | m, d < m.
inline std::vector<mpz_class> cyclotomic_polynomial(int m) {
  if (m < 1)
    fail("InvalidArgument", "cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, std::vector<mpz_class>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(m);
    if (it != cache.end())
      return it->second;
  }
  upoly::Poly num(static_cast<std::size_t>(m) + 1, Rational(0));
  num[0] = Rational(-1);
  num[static_cast<std::size_t>(m)] = Rational(1);
  for (int d = 1; d < m; ++d) {
    if (m % d != 0)
      continue;
    upoly::Poly phi_d;
    for (const auto &c : cyclotomic_polynomial(d))
      phi_d.emplace_back(c);
    auto [q, r] = upoly::divmod(num, phi_d);
    if (!r.empty())
      fail_internal("InternalError", "cyclotomic division left a remainder");
    num = q;
  }
  std::vector<mpz_class> out;
  for (const auto &c : num)
    out.push_back(c.num());
  std::lock_guard lock(mu);
  cache.emplace(m, out);
  return out;
}

inline int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0)
        m /= p;
      result -= result / p;
    }
  }
  if (m > 1)
    result -= result / m;
  return result;
}

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1),
// reduced modulo Phi_m. Values that lie in Q are always stored with order 1,
// which makes the representation canonical and lets rationals mix freely with
// any cyclotomic field. Mixing two different non-rational fields is an error.
class Cyclotomic {
public:
  Cyclotomic() : order_(1), coeffs_{Rational(0)} {}
  Cyclotomic(long v) : order_(1), coeffs_{Rational(v)} {} // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational &r) : order_(1), coeffs_{r} {} // NOLINT(google-explicit-constructor)

  // Build from arbitrary power-basis coordinates (any length) in Q(zeta_m).
  static Cyclotomic from_powers(int m, const std::vector<Rational> &powers) {
    if (m < 1)
      fail("InvalidArgument", "cyclotomic order must be positive");
    upoly::Poly folded(static_cast<std::size_t>(m), Rational(0));
    for (std::size_t k = 0; k < powers.size(); ++k)
      folded[k % static_cast<std::size_t>(m)] += powers[k];
    return reduce(m, std::move(folded));
  }

  // The generator zeta_m = exp(2 pi i / m).
  static Cyclotomic zeta(int m, int power = 1) {
    if (m < 1)
      fail("InvalidArgument", "cyclotomic order must be positive");
    std::vector<Rational> powers(static_cast<std::size_t>(m), Rational(0));
    int k = ((power % m) + m) % m;
    powers[static_cast<std::size_t>(k)] = Rational(1);
    return from_powers(m, powers);
  }

  int order() const { return order_; }
  const std::vector<Rational> &coeffs() const { return coeffs_; }

  bool is_rational() const { return order_ == 1; }
  bool is_zero() const { return order_ == 1 && coeffs_[0].is_zero(); }
  bool is_one() const { return order_ == 1 && coeffs_[0].is_one(); }
  Rational rational_value() const {
    if (!is_rational())
      fail("FieldMismatch", "cyclotomic element is not rational");
    return coeffs_[0];
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto &c : r.coeffs_)
      c = -c;
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic &a, const Cyclotomic &b) {
    int m = common_order(a, b);
    upoly::Poly pa = a.lift(m), pb = b.lift(m);
    for (std::size_t i = 0; i < pb.size(); ++i)
      pa[i] += pb[i];
    return reduce(m, std::move(pa));
  }
  friend Cyclotomic operator-(const Cyclotomic &a, const Cyclotomic &b) { return a + (-b); }
  friend Cyclotomic operator*(const Cyclotomic &a, const Cyclotomic &b) {
    if (a.is_rational() && b.is_rational())
      return Cyclotomic(a.coeffs_[0] * b.coeffs_[0]);
    int m = common_order(a, b);
    return reduce(m, upoly::mul(a.lift(m), b.lift(m)));
  }
  friend Cyclotomic operator/(const Cyclotomic &a, const Cyclotomic &b) { return a * b.inverse(); }

  Cyclotomic &operator+=(const Cyclotomic &o) { return *this = *this + o; }
  Cyclotomic &operator-=(const Cyclotomic &o) { return *this = *this - o; }
  Cyclotomic &operator*=(const Cyclotomic &o) { return *this = *this * o; }
  Cyclotomic &operator/=(const Cyclotomic &o) { return *this = *this / o; }

  Cyclotomic inverse() const {
    if (is_zero())
      fail("DivisionByZero", "inverse of zero");
    if (is_rational())
      return Cyclotomic(coeffs_[0].inverse());
    // Extended Euclid: find u with u*a = 1 mod Phi_m.
    upoly::Poly r0 = modulus(order_), r1 = coeffs_;
    upoly::trim(r1);
    upoly::Poly s0{}, s1{Rational(1)};
    while (upoly::degree(r1) > 0) {
      auto [q, r] = upoly::divmod(r0, r1);
      upoly::Poly s = upoly::sub(s0, upoly::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r1 is a nonzero constant since Phi_m is irreducible.
    Rational c = r1.at(0).inverse();
    for (auto &x : s1)
      x *= c;
    return reduce(order_, std::move(s1));
  }

  Cyclotomic pow(long e) const {
    if (e < 0)
      return inverse().pow(-e);
    Cyclotomic result(1), base = *this;
    while (e > 0) {
      if (e & 1)
        result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const Cyclotomic &a, const Cyclotomic &b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  // Ascending powers, e.g. "1/2 - 3*zeta^2".
  std::string to_string() const {
    if (is_rational())
      return coeffs_[0].to_string();
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational &c = coeffs_[k];
      if (c.is_zero())
        continue;
      std::string mono = k == 0 ? "" : (k == 1 ? "zeta" : "zeta^" + std::to_string(k));
      Rational mag = abs(c);
      std::string body;
      if (mono.empty())
        body = mag.to_string();
      else if (mag.is_one())
        body = mono;
      else
        body = mag.to_string() + "*" + mono;
      if (out.empty())
        out = (c.sign() < 0 ? "-" : "") + body;
      else
        out += (c.sign() < 0 ? " - " : " + ") + body;
    }
    return out;
  }

  friend std::ostream &operator<<(std::ostream &os, const Cyclotomic &c) { return os << c.to_string(); }

private:
  static upoly::Poly modulus(int m) {
    upoly::Poly out;
    for (const auto &c : cyclotomic_polynomial(m))
      out.emplace_back(c);
    return out;
  }

  static int common_order(const Cyclotomic &a, const Cyclotomic &b) {
    if (a.is_rational())
      return b.order_;
    if (b.is_rational() || a.order_ == b.order_)
      return a.order_;
    fail("FieldMismatch", "cannot mix Q(zeta_" + std::to_string(a.order_) + ") and Q(zeta_" +
                              std::to_string(b.order_) + ")");
  }

  upoly::Poly lift(int m) const {
    upoly::Poly out(static_cast<std::size_t>(euler_phi(m)), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      out[i] = coeffs_[i];
    return out;
  }

  static Cyclotomic reduce(int m, upoly::Poly p) {
    auto [q, r] = upoly::divmod(std::move(p), modulus(m));
    (void)q;
    Cyclotomic out;
    bool rational = true;
    for (std::size_t i = 1; i < r.size(); ++i)
      rational = rational && r[i].is_zero();
    if (rational) {
      out.order_ = 1;
      out.coeffs_ = {r.empty() ? Rational(0) : r[0]};
      return out;
    }
    out.order_ = m;
    out.coeffs_.assign(static_cast<std::size_t>(euler_phi(m)), Rational(0));
    for (std::size_t i = 0; i < r.size(); ++i)
      out.coeffs_[i] = r[i];
    return out;
  }

  int order_;
  std::vector<Rational> coeffs_;
};

} // namespace mzvdecomp

#endif // MZVDECOMP_CYCLOTOMIC_HPP
