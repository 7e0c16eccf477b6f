#ifndef MZVDECOMP_MULTIPOLY_HPP
#define MZVDECOMP_MULTIPOLY_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace mzvdecomp {

using Exponents = std::vector<int>;

// Graded lexicographic order, leading (highest) monomial first.
struct GrlexGreater {
  bool operator()(const Exponents &a, const Exponents &b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db)
      return da > db;
    return a > b;
  }
};

// Degree of the zero polynomial.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

// Sparse multivariate polynomial in a fixed number of variables. Zero
// coefficients are never stored, so structural equality is value equality.
template <class S>
class MultiPoly {
public:
  using Terms = std::map<Exponents, S, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const S &c) {
    MultiPoly r(nvars);
    r.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
    return r;
  }

  // x_i with i zero-based.
  static MultiPoly variable(int nvars, int i) {
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e.at(static_cast<std::size_t>(i)) = 1;
    MultiPoly r(nvars);
    r.add_term(e, S(Rational(1)));
    return r;
  }

  static MultiPoly monomial(const Exponents &e, const S &c) {
    MultiPoly r(static_cast<int>(e.size()));
    r.add_term(e, c);
    return r;
  }

  int nvars() const { return nvars_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(const Exponents &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? S(Rational(0)) : it->second;
  }

  void add_term(const Exponents &e, const S &c) {
    if (static_cast<int>(e.size()) != nvars_)
      fail("SizeMismatch", "monomial arity does not match polynomial");
    if (c.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  int degree_in(int i) const {
    int d = kZeroDegree;
    for (const auto &[e, c] : terms_)
      d = std::max(d, e[static_cast<std::size_t>(i)]);
    return d;
  }

  int total_degree() const {
    return terms_.empty() ? kZeroDegree : std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0);
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto &[e, c] : terms_)
      r.terms_.emplace(e, -c);
    return r;
  }

  MultiPoly &operator+=(const MultiPoly &o) {
    check_same(o);
    for (const auto &[e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }
  MultiPoly &operator-=(const MultiPoly &o) {
    check_same(o);
    for (const auto &[e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly &b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly &b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b) {
    a.check_same(b);
    MultiPoly r(a.nvars_);
    Exponents e(static_cast<std::size_t>(a.nvars_));
    for (const auto &[ea, ca] : a.terms_) {
      for (const auto &[eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  MultiPoly &operator*=(const MultiPoly &o) { return *this = *this * o; }

  MultiPoly scaled(const S &s) const {
    MultiPoly r(nvars_);
    if (s.is_zero())
      return r;
    for (const auto &[e, c] : terms_)
      r.add_term(e, c * s);
    return r;
  }

  MultiPoly pow(int k) const {
    if (k < 0)
      fail("NegativeExponent", "negative polynomial power");
    MultiPoly result = constant(nvars_, S(Rational(1))), base = *this;
    while (k > 0) {
      if (k & 1)
        result *= base;
      base *= base;
      k >>= 1;
    }
    return result;
  }

  friend bool operator==(const MultiPoly &a, const MultiPoly &b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  S evaluate(const std::vector<S> &point) const {
    if (static_cast<int>(point.size()) != nvars_)
      fail("SizeMismatch", "evaluation point arity does not match polynomial");
    S acc(Rational(0));
    for (const auto &[e, c] : terms_) {
      S t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0)
          t = t * scalar_power(point[i], e[i]);
      acc = acc + t;
    }
    return acc;
  }

  // Replaces x_i by sign*x_i + shift and re-expands.
  MultiPoly substitute_affine(int i, int sign, const S &shift) const {
    if (sign != 1 && sign != -1)
      fail("InvalidArgument", "substitution sign must be +1 or -1");
    if (i < 0 || i >= nvars_)
      fail("UnknownVariable", "variable index out of range");
    const auto idx = static_cast<std::size_t>(i);
    MultiPoly r(nvars_);
    // Powers of the shift are shared across terms.
    std::vector<S> shift_pow{S(Rational(1))};
    for (const auto &[e, c] : terms_) {
      int deg = e[idx];
      while (static_cast<int>(shift_pow.size()) <= deg)
        shift_pow.push_back(shift_pow.back() * shift);
      Exponents ne = e;
      for (int t = 0; t <= deg; ++t) {
        Rational b = binomial(deg, t);
        if (sign < 0 && (t % 2) == 1)
          b = -b;
        ne[idx] = t;
        r.add_term(ne, c * S(b) * shift_pow[static_cast<std::size_t>(deg - t)]);
      }
    }
    return r;
  }

  // Returns Q with Q(x_1..x_p) = P(sign[perm[0]] x_{perm[0]}, ..., sign[perm[p-1]] x_{perm[p-1]})
  // (zero-based perm), i.e. variable i of P receives the signed variable perm[i].
  MultiPoly substitute_signed_permutation(const std::vector<int> &signs, const std::vector<int> &perm) const {
    if (static_cast<int>(signs.size()) != nvars_ || static_cast<int>(perm.size()) != nvars_)
      fail("SizeMismatch", "group element size does not match polynomial");
    MultiPoly r(nvars_);
    Exponents ne(static_cast<std::size_t>(nvars_));
    for (const auto &[e, c] : terms_) {
      int sgn = 1;
      for (std::size_t i = 0; i < e.size(); ++i) {
        auto target = static_cast<std::size_t>(perm[i]);
        ne[target] = e[i];
        if (signs[target] < 0 && (e[i] % 2) == 1)
          sgn = -sgn;
      }
      r.add_term(ne, sgn > 0 ? c : -c);
    }
    return r;
  }

  std::string to_string(char var = 'k') const;

private:
  void check_same(const MultiPoly &o) const {
    if (nvars_ != o.nvars_)
      fail("SizeMismatch", "polynomials have different variable counts");
  }

  int nvars_ = 0;
  Terms terms_;
};

namespace detail {

struct CoefficientText {
  bool negative;
  bool unit;
  std::string magnitude;
};

inline CoefficientText coefficient_text(const Rational &c) {
  Rational m = abs(c);
  return {c.sign() < 0, m.is_one(), m.to_string()};
}

inline CoefficientText coefficient_text(const Cyclotomic &c) {
  if (c.is_rational())
    return coefficient_text(c.rational_value());
  return {false, false, "(" + c.to_string() + ")"};
}

} // namespace detail

// Canonical text: terms in graded-lex order with explicit '*', e.g. "3/4*k1^2 - k2".
template <class S>
std::string MultiPoly<S>::to_string(char var) const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto &[e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += var + std::to_string(i + 1);
      if (e[i] > 1)
        mono += "^" + std::to_string(e[i]);
    }
    auto ct = detail::coefficient_text(c);
    std::string body;
    if (mono.empty())
      body = ct.magnitude;
    else if (ct.unit)
      body = mono;
    else
      body = ct.magnitude + "*" + mono;
    if (out.empty())
      out = (ct.negative ? "-" : "") + body;
    else
      out += (ct.negative ? " - " : " + ") + body;
  }
  return out;
}

// k-frame (tag 'k') or K-frame (tag 'K') with K_i = k_i + offset_i.
struct CoordinateFrame {
  char tag = 'k';
  std::vector<Rational> offsets;

  // Offsets r_i + n_i/2.
  static CoordinateFrame from_parameters(char tag, const std::vector<int> &r, const std::vector<int> &n) {
    CoordinateFrame f{tag, {}};
    for (std::size_t i = 0; i < r.size(); ++i)
      f.offsets.push_back(Rational(r[i]) + Rational(n.at(i), 2));
    return f;
  }
};

template <class S>
MultiPoly<S> change_frame(const MultiPoly<S> &p, const CoordinateFrame &from, const CoordinateFrame &to) {
  if (from.offsets != to.offsets)
    fail("FrameMismatch", "coordinate frames do not share offsets");
  if (from.tag == to.tag)
    return p;
  if (static_cast<int>(from.offsets.size()) != p.nvars())
    fail("SizeMismatch", "frame size does not match polynomial");
  // k -> K substitutes k_i = K_i - offset_i; K -> k substitutes K_i = k_i + offset_i.
  const int sign_of_offset = (from.tag == 'k') ? -1 : 1;
  MultiPoly<S> out = p;
  for (int i = 0; i < p.nvars(); ++i) {
    Rational off = from.offsets[static_cast<std::size_t>(i)];
    if (!off.is_zero())
      out = out.substitute_affine(i, 1, S(sign_of_offset > 0 ? off : -off));
  }
  return out;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_MULTIPOLY_HPP
