#ifndef MZVDECOMP_NUMERIC_HPP
#define MZVDECOMP_NUMERIC_HPP

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "bigfloat.hpp"
#include "composition.hpp"
#include "scalar.hpp"
#include "series.hpp"

namespace mzvdecomp {

inline constexpr unsigned kDefaultBits = 256;
inline constexpr double kDefaultMzvError = 1e-25;
inline constexpr double kDefaultSeriesError = 1e-8;

// A complex number with |stored - true| <= error.
struct BigFloatValue {
  ComplexFloat value{BigFloat(0), BigFloat(0)};
  BigFloat error = 0;

  static BigFloatValue exact(const BigFloat &x) { return {{x, BigFloat(0)}, BigFloat(0)}; }

  bool is_real() const { return value.im == 0; }
  const BigFloat &re() const { return value.re; }
  const BigFloat &im() const { return value.im; }
  double error_double() const { return to_double(error); }

  friend BigFloatValue operator+(const BigFloatValue &a, const BigFloatValue &b) {
    return {a.value + b.value, a.error + b.error};
  }
  friend BigFloatValue operator-(const BigFloatValue &a, const BigFloatValue &b) {
    return {a.value - b.value, a.error + b.error};
  }
  friend BigFloatValue operator*(const BigFloatValue &a, const BigFloatValue &b) {
    return {a.value * b.value, abs(a.value) * b.error + abs(b.value) * a.error + a.error * b.error};
  }

  // "0.0013397043 ± 1e-26"; complex values print as "(re + im*i) ± err".
  std::string to_string(int digits = 20) const {
    std::string v = format_float(value.re, digits);
    if (!is_real())
      v = "(" + v + (value.im < 0 ? " - " : " + ") + format_float(boost::multiprecision::abs(value.im), digits) +
          "*i)";
    return v + " ± " + format_bound(error_double());
  }
};

inline BigFloat distance(const BigFloatValue &a, const BigFloatValue &b) { return abs(a.value - b.value); }

namespace detail {

// Iterated-integral word of a composition: s -> 0^(s-1) 1 per part.
inline std::vector<int> word_of(const Composition &c) {
  std::vector<int> w;
  for (int s : c) {
    w.insert(w.end(), static_cast<std::size_t>(s - 1), 0);
    w.push_back(1);
  }
  return w;
}

inline Composition composition_of(const std::vector<int> &w) {
  Composition c;
  int run = 0;
  for (int letter : w) {
    ++run;
    if (letter == 1) {
      c.push_back(run);
      run = 0;
    }
  }
  if (run != 0)
    fail_internal("InternalError", "word does not end with the letter 1");
  return c;
}

// Smallest N with 6 * 2^-(N+1) * (1 + ln(N+1))^(m-1) <= eps. Terms of
// Li_t(1/2) are bounded by b_n = 2^-n (1 + ln n)^(m-1), and b_{n+1}/b_n <= 0.83
// once n >= 2(m-1), so the tail after N is at most 6 b_{N+1}.
inline long half_cutoff(int m, double eps) {
  long N = std::max(2L * (m - 1), 1L);
  while (std::log(6.0) - (N + 1) * std::log(2.0) + (m - 1) * std::log1p(std::log(N + 1.0)) > std::log(eps))
    ++N;
  return N;
}

// Li_t(1/2) = sum_{n_1 > ... > n_m >= 1} 2^-n_1 / (n_1^t_1 ... n_m^t_m).
inline BigFloatValue li_half(const Composition &t, double eps, unsigned bits) {
  PrecisionGuard guard(bits);
  if (t.empty())
    return BigFloatValue::exact(BigFloat(1));
  static std::mutex mu;
  static std::map<std::tuple<Composition, unsigned, long>, BigFloatValue> cache;
  const int m = depth(t);
  const long N = half_cutoff(m, eps);
  auto key = std::make_tuple(t, bits, N);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end())
      return it->second;
  }
  // acc[i] = sum over n >= n_i > ... > n_m of prod_{l >= i} n_l^-t_l
  std::vector<BigFloat> acc(static_cast<std::size_t>(m), BigFloat(0));
  BigFloat total = 0, two_pow = 1;
  for (long n = 1; n <= N; ++n) {
    two_pow /= 2;
    const BigFloat nn(n);
    for (int i = 0; i < m; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      BigFloat inner = i + 1 < m ? acc[ii + 1] : BigFloat(1);
      BigFloat term = inner / pow(nn, t[ii]);
      if (i == 0)
        total += two_pow * term;
      acc[ii] += term;
    }
  }
  BigFloat tail = 6 * pow(BigFloat(2), -(N + 1)) * pow(1 + log(BigFloat(N + 1)), m - 1);
  BigFloat rounding = BigFloat(N) * (weight(t) + 4) * 8 * pow(BigFloat(2), -static_cast<long>(bits));
  BigFloatValue out{{total, BigFloat(0)}, tail + rounding};
  std::lock_guard lock(mu);
  cache.emplace(key, out);
  return out;
}

inline BigFloat minimal_error(unsigned bits) { return pow(BigFloat(2), -static_cast<long>(bits) + 24); }

} // namespace detail

// zeta(c) through the path split at 1/2:
//   zeta(w) = sum_j Li_{b_j}(1/2) Li_{a_j}(1/2),
// with a_j the last W - j letters of w and b_j the first j letters reversed with
// 0 <-> 1 exchanged (the image of [1/2, 1] under t -> 1 - t).
inline BigFloatValue eval_mzv(const Composition &c, double target_error = kDefaultMzvError,
                              unsigned bits = kDefaultBits) {
  if (!is_convergent(c))
    fail("DivergentComposition", "composition " + to_string(c) + " does not converge");
  PrecisionGuard guard(bits);
  if (c.empty())
    return BigFloatValue::exact(BigFloat(1));
  if (BigFloat(target_error) < detail::minimal_error(bits))
    fail("PrecisionUnreachable", "target error below what " + std::to_string(bits) + " bits can deliver");

  static std::mutex mu;
  static std::map<std::tuple<Composition, unsigned, double>, BigFloatValue> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({c, bits, target_error});
    if (it != cache.end())
      return it->second;
  }

  const auto w = detail::word_of(c);
  const int W = static_cast<int>(w.size());
  double eps = target_error / (16.0 * (W + 1));
  for (int attempt = 0; attempt < 40; ++attempt, eps /= 4) {
    BigFloatValue sum;
    for (int j = 0; j <= W; ++j) {
      std::vector<int> a(w.begin() + j, w.end()), b;
      for (int i = j - 1; i >= 0; --i)
        b.push_back(1 - w[static_cast<std::size_t>(i)]);
      sum = sum + detail::li_half(detail::composition_of(b), eps, bits) *
                      detail::li_half(detail::composition_of(a), eps, bits);
    }
    if (sum.error <= target_error) {
      std::lock_guard lock(mu);
      cache.emplace(std::make_tuple(c, bits, target_error), sum);
      return sum;
    }
  }
  fail("PrecisionUnreachable", "could not reach the requested error for " + to_string(c));
}

template <ExactScalar S>
BigFloatValue eval_combination(const FormalCombination<S> &x, double target_error = kDefaultMzvError,
                               unsigned bits = kDefaultBits) {
  PrecisionGuard guard(bits);
  BigFloatValue out;
  if (x.is_zero())
    return out;
  if (!x.all_convergent())
    fail("DivergentComposition", "combination contains a divergent symbol");
  std::vector<ComplexFloat> coeffs;
  BigFloat mass = 0;
  for (const auto &[c, v] : x.terms()) {
    coeffs.push_back(embed_numeric(v, bits));
    mass += abs(coeffs.back());
  }
  double per_term = target_error / (2.0 * (1.0 + to_double(mass)));
  std::size_t k = 0;
  for (const auto &[c, v] : x.terms()) {
    BigFloatValue z = eval_mzv(c, per_term, bits);
    // embedding of an exact coefficient is accurate to a few ulps
    BigFloatValue coeff{coeffs[k++], BigFloat(0)};
    coeff.error = (abs(coeff.value) + 1) * detail::minimal_error(bits);
    out = out + coeff * z;
  }
  return out;
}

namespace detail {

inline BigFloat neville_at_zero(const std::vector<BigFloat> &h, std::vector<BigFloat> y) {
  const std::size_t n = y.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i)
      y[i] = (h[i - k] * y[i] - h[i] * y[i - 1]) / (h[i - k] - h[i]);
  return y[n - 1];
}

} // namespace detail

// Direct evaluation of sum_{k_1 >= ... >= k_p >= 1} P(k)/prod_i (k_i+r_i)_{n_i+1}^{A_i}.
// Each monomial of P factorizes, so the nested partial sums S(N) over k_1 <= N
// are accumulated level by level in O(N * #monomial suffixes). Under the degree
// bound every factor is O(k^-2), so S(N) = S + sum_j b_j N^-j and Neville
// extrapolation in 1/N over the checkpoints N = 32 * 2^i removes the tail. The reported error is
// ten times the change between the last two extrapolants: a heuristic bound.
template <ExactScalar S>
BigFloatValue eval_series(const SeriesSpec<S> &spec, double target_error = kDefaultSeriesError,
                          unsigned bits = 192) {
  validate(spec);
  PrecisionGuard guard(bits);
  BigFloatValue out;
  if (spec.P.is_zero())
    return out;
  const int p = spec.p;

  // level l holds the distinct suffixes (e_l, ..., e_{p-1}) of the monomials
  std::vector<std::map<Exponents, std::size_t>> index(static_cast<std::size_t>(p));
  std::vector<std::vector<std::pair<int, std::size_t>>> link(static_cast<std::size_t>(p));
  std::vector<std::pair<std::size_t, ComplexFloat>> top;
  for (const auto &[e, coeff] : spec.P.terms()) {
    std::size_t below = 0;
    for (int l = p - 1; l >= 0; --l) {
      Exponents suffix(e.begin() + l, e.end());
      auto [it, inserted] = index[static_cast<std::size_t>(l)].try_emplace(suffix, link[static_cast<std::size_t>(l)].size());
      if (inserted)
        link[static_cast<std::size_t>(l)].push_back({e[static_cast<std::size_t>(l)], below});
      below = it->second;
    }
    top.push_back({below, embed_numeric(coeff, bits)});
  }
  std::vector<int> maxdeg(static_cast<std::size_t>(p), 0);
  for (int l = 0; l < p; ++l)
    maxdeg[static_cast<std::size_t>(l)] = std::max(0, spec.P.degree_in(l));

  // checkpoints N = 32, 64, ...; extrapolate over the last min_points to
  // max_points of them
  const std::size_t min_points = 6, max_points = 12;
  const long max_cutoff = 1L << 19;
  std::vector<std::vector<BigFloat>> acc(static_cast<std::size_t>(p));
  for (int l = 0; l < p; ++l)
    acc[static_cast<std::size_t>(l)].assign(link[static_cast<std::size_t>(l)].size(), BigFloat(0));
  std::vector<BigFloat> h, re, im;
  long next = 32;
  for (long K = 1; K <= max_cutoff; ++K) {
    const BigFloat k(K);
    for (int l = p - 1; l >= 0; --l) {
      const auto ll = static_cast<std::size_t>(l);
      BigFloat den = 1;
      for (int j = 0; j <= spec.n[ll]; ++j)
        den *= pow(k + spec.r[ll] + j, spec.A[ll]);
      std::vector<BigFloat> f(static_cast<std::size_t>(maxdeg[ll] + 1));
      f[0] = 1 / den;
      for (std::size_t b = 1; b < f.size(); ++b)
        f[b] = f[b - 1] * k;
      for (std::size_t st = 0; st < link[ll].size(); ++st) {
        const auto &[ex, below] = link[ll][st];
        BigFloat term = f[static_cast<std::size_t>(ex)];
        if (l + 1 < p)
          term *= acc[ll + 1][below];
        acc[ll][st] += term;
      }
    }
    if (K != next)
      continue;
    next *= 2;
    ComplexFloat partial{BigFloat(0), BigFloat(0)};
    for (const auto &[st, c] : top)
      partial = partial + c * ComplexFloat{acc[0][st], BigFloat(0)};
    h.push_back(BigFloat(1) / k);
    re.push_back(partial.re);
    im.push_back(partial.im);
    if (h.size() < min_points)
      continue;
    const std::size_t points = std::min(h.size(), max_points);
    auto last = [&](const std::vector<BigFloat> &v, std::size_t count) {
      return std::vector<BigFloat>(v.end() - static_cast<long>(count), v.end());
    };
    ComplexFloat full{detail::neville_at_zero(last(h, points), last(re, points)),
                      detail::neville_at_zero(last(h, points), last(im, points))};
    ComplexFloat shorter{detail::neville_at_zero(last(h, points - 1), last(re, points - 1)),
                         detail::neville_at_zero(last(h, points - 1), last(im, points - 1))};
    BigFloat err = 10 * abs(full - shorter) + detail::minimal_error(bits);
    if (err <= target_error)
      return {full, err};
  }
  fail("PrecisionUnreachable", "series extrapolation did not settle within the cutoff budget");
}

struct DecompositionCheck {
  bool pass = false;
  BigFloatValue series, combination;
  BigFloat residual = 0;
  double tolerance = 0;
};

template <ExactScalar S>
DecompositionCheck check_decomposition(const SeriesSpec<S> &spec, const FormalCombination<S> &x,
                                       double tolerance = kDefaultSeriesError) {
  DecompositionCheck out;
  out.tolerance = tolerance;
  out.series = eval_series(spec, tolerance / 10);
  out.combination = eval_combination(x);
  out.residual = distance(out.series, out.combination);
  out.pass = out.residual <= tolerance;
  return out;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_NUMERIC_HPP
