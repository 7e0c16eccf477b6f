#ifndef MZVDECOMP_SERIES_HPP
#define MZVDECOMP_SERIES_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "composition.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "multipoly.hpp"

namespace mzvdecomp {

// The series  sum_{k_1 >= ... >= k_p >= 1} P(k) / prod_i (k_i + r_i)_{n_i+1}^{A_i}.
template <class S>
struct SeriesSpec {
  int p = 1;
  std::vector<int> A, n, r;
  MultiPoly<S> P; // k-frame
  Field field;

  CoordinateFrame k_frame() const { return CoordinateFrame::from_parameters('k', r, n); }
  CoordinateFrame K_frame() const { return CoordinateFrame::from_parameters('K', r, n); }
  MultiPoly<S> P_in_K() const { return change_frame(P, k_frame(), K_frame()); }

  bool uniform() const {
    for (int i = 1; i < p; ++i)
      if (A[static_cast<std::size_t>(i)] != A[0] || n[static_cast<std::size_t>(i)] != n[0])
        return false;
    return true;
  }

  // Checks array shapes and parameter ranges; does not look at degrees.
  void check_shape() const {
    if (p < 1 || p > 9)
      fail("InvalidArgument", "p must lie in 1..9");
    const auto sz = static_cast<std::size_t>(p);
    if (A.size() != sz || n.size() != sz || r.size() != sz)
      fail("SizeMismatch", "A, n and r must each have p entries");
    if (P.nvars() != p)
      fail("SizeMismatch", "numerator must have p variables");
    for (std::size_t i = 0; i < sz; ++i) {
      if (A[i] < 1)
        fail("InvalidArgument", "A_" + std::to_string(i + 1) + " must be >= 1");
      if (n[i] < 0 || r[i] < 0)
        fail("InvalidArgument", "n and r entries must be >= 0");
    }
  }
};

struct ValidationReport {
  std::vector<int> degrees;                // kZeroDegree for P = 0
  std::vector<std::optional<int>> margins; // A_i(n_i+1) - 2 - deg_i; empty for P = 0
  std::vector<int> D;                      // D_j = sum_{i<=j} A_i(n_i+1) - j - 1
  bool convergent = true;                  // partial degree sums bounded by D_j
  bool degree_ok = true;                   // every margin >= 0
  bool well_ordered = true;                // r_i >= r_{i+1} + n_{i+1} + 1
  int first_bad_variable = -1;             // zero-based, -1 when degree_ok
};

template <class S>
ValidationReport analyze(const SeriesSpec<S> &spec) {
  spec.check_shape();
  ValidationReport rep;
  int partial_deg = 0, partial_bound = 0;
  for (int i = 0; i < spec.p; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    int deg = spec.P.degree_in(i);
    int bound = spec.A[ii] * (spec.n[ii] + 1) - 2;
    rep.degrees.push_back(deg);
    if (deg == kZeroDegree) {
      rep.margins.emplace_back();
    } else {
      rep.margins.emplace_back(bound - deg);
      if (deg > bound && rep.degree_ok) {
        rep.degree_ok = false;
        rep.first_bad_variable = i;
      }
      partial_deg += deg;
    }
    partial_bound += spec.A[ii] * (spec.n[ii] + 1);
    rep.D.push_back(partial_bound - (i + 1) - 1);
    if (!spec.P.is_zero() && partial_deg > rep.D.back())
      rep.convergent = false;
    if (i + 1 < spec.p && spec.r[ii] < spec.r[ii + 1] + spec.n[ii + 1] + 1)
      rep.well_ordered = false;
  }
  return rep;
}

// Throws DegreeTooHigh when the per-variable degree bound fails.
template <class S>
ValidationReport validate(const SeriesSpec<S> &spec) {
  ValidationReport rep = analyze(spec);
  if (!rep.degree_ok) {
    const auto i = static_cast<std::size_t>(rep.first_bad_variable);
    fail("DegreeTooHigh", "variable " + std::to_string(i + 1) + ": degree " + std::to_string(rep.degrees[i]) +
                              " exceeds bound " + std::to_string(spec.A[i] * (spec.n[i] + 1) - 2));
  }
  return rep;
}

// Key (s, j) of a polar term prod_i (k_i + r_i + j_i)^(-s_i); ordered
// lexicographically by (s, j).
using PolarKey = std::pair<std::vector<int>, std::vector<int>>;

// Coefficients of the pure polar partial fraction expansion. ell holds
// derivative orders: exponents range over [1 + ell_i, A_i + ell_i].
template <class S>
struct PolarTable {
  int p = 1;
  std::vector<int> A, n, r, ell;
  std::map<PolarKey, S> coeffs;

  S at(const std::vector<int> &s, const std::vector<int> &j) const {
    auto it = coeffs.find({s, j});
    return it == coeffs.end() ? S(Rational(0)) : it->second;
  }

  void add(const std::vector<int> &s, const std::vector<int> &j, const S &c) {
    if (c.is_zero())
      return;
    auto [it, inserted] = coeffs.try_emplace({s, j}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero())
        coeffs.erase(it);
    }
  }

  // Shift c_i = r_i + j_i of each factor.
  std::vector<int> shifts(const std::vector<int> &j) const {
    std::vector<int> c(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
      c[i] = r[i] + j[i];
    return c;
  }

  friend bool operator==(const PolarTable &a, const PolarTable &b) {
    return a.p == b.p && a.A == b.A && a.n == b.n && a.r == b.r && a.ell == b.ell && a.coeffs == b.coeffs;
  }
};

namespace detail {

// Univariate table of k^e / (k + r)_{n+1}^A as a list of (j, s, coeff).
// At the pole k = -(r+j), with u = k + r + j, the function equals
// u^(-A) (u - r - j)^e prod_{j' != j} (u + j' - j)^(-A); the coefficient of
// u^(-s) is the Taylor coefficient of order A - s of the deflated factor.
inline const std::vector<std::tuple<int, int, Rational>> &univariate_table(int e, int A, int n, int r) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int>, std::vector<std::tuple<int, int, Rational>>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(e, A, n, r);
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;
  if (e >= A * (n + 1))
    fail_internal("InternalError", "univariate numerator degree leaves a polynomial part");

  std::vector<std::tuple<int, int, Rational>> out;
  const auto order = static_cast<std::size_t>(A); // Taylor coefficients 0..A-1
  auto mul_trunc = [&](const std::vector<Rational> &a, const std::vector<Rational> &b) {
    std::vector<Rational> c(order, Rational(0));
    for (std::size_t i = 0; i < order; ++i) {
      if (a[i].is_zero())
        continue;
      for (std::size_t k = 0; i + k < order; ++k)
        c[i + k] += a[i] * b[k];
    }
    return c;
  };
  for (int j = 0; j <= n; ++j) {
    Rational a0(-(r + j));
    // (a0 + u)^e
    std::vector<Rational> f(order, Rational(0));
    for (int t = 0; t <= e && t < A; ++t)
      f[static_cast<std::size_t>(t)] = binomial(e, t) * a0.pow(e - t);
    for (int jp = 0; jp <= n; ++jp) {
      if (jp == j)
        continue;
      // (d + u)^(-A) = sum_m C(-A, m) d^(-A-m) u^m
      Rational d(jp - j);
      std::vector<Rational> g(order, Rational(0));
      for (int m = 0; m < A; ++m)
        g[static_cast<std::size_t>(m)] = binomial(-A, m) * d.pow(-A - m);
      f = mul_trunc(f, g);
    }
    for (int s = 1; s <= A; ++s) {
      const Rational &c = f[static_cast<std::size_t>(A - s)];
      if (!c.is_zero())
        out.emplace_back(j, s, c);
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

} // namespace detail

// Exact partial fraction table, expanding one variable at a time and merging
// monomials that agree on the remaining exponents.
template <class S>
PolarTable<S> expand_partial_fractions(const SeriesSpec<S> &spec) {
  validate(spec);
  PolarTable<S> table{spec.p, spec.A, spec.n, spec.r, std::vector<int>(static_cast<std::size_t>(spec.p), 0), {}};

  // (s prefix, j prefix, remaining exponents) -> coefficient
  using State = std::map<std::tuple<std::vector<int>, std::vector<int>, Exponents>, S>;
  State state;
  for (const auto &[e, c] : spec.P.terms())
    state.emplace(std::make_tuple(std::vector<int>{}, std::vector<int>{}, e), c);
  for (int i = 0; i < spec.p; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    State next;
    for (const auto &[key, c] : state) {
      const auto &[s, j, rest] = key;
      const auto &uni = detail::univariate_table(rest[0], spec.A[ii], spec.n[ii], spec.r[ii]);
      Exponents tail(rest.begin() + 1, rest.end());
      for (const auto &[jj, ss, u] : uni) {
        auto s2 = s, j2 = j;
        s2.push_back(ss);
        j2.push_back(jj);
        S v = c * S(u);
        auto [it, inserted] = next.try_emplace(std::make_tuple(std::move(s2), std::move(j2), tail), v);
        if (!inserted)
          it->second = it->second + v;
      }
    }
    state = std::move(next);
  }
  for (const auto &[key, c] : state)
    table.add(std::get<0>(key), std::get<1>(key), c);
  return table;
}

// The depth-p projection: sum over j of C[s, j] as the coefficient of zeta_f(s).
template <class S>
FormalCombination<S> depth_p_projection(const PolarTable<S> &table) {
  FormalCombination<S> out;
  for (const auto &[key, c] : table.coeffs)
    out.add(key.first, c);
  return out;
}

// Coefficient table of rho(g)(R), read off combinatorially:
// C'[s, j] = prod_i eps_i^{s_i} C[(s_gamma(i)), (eps_i . j_gamma(i))], where
// eps . j = n - j for eps = -1.
template <class S>
PolarTable<S> transform_table(const PolarTable<S> &table, const GroupElement &g) {
  g.check();
  if (g.size() != table.p)
    fail("SizeMismatch", "group element size does not match table");
  for (int i = 0; i < table.p; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const auto gi = static_cast<std::size_t>(g.perm[ii]);
    if (table.n[gi] != table.n[ii] || table.A[gi] != table.A[ii] || table.ell[gi] != table.ell[ii])
      fail("FamilyNotClosed", "n and A must be constant along the cycles of the permutation");
  }
  PolarTable<S> out = table;
  out.coeffs.clear();
  // Source entry (s, j) feeds the target key with s'_{gamma(i)} = s_i and
  // j'_{gamma(i)} = eps_{gamma(i)} . j_i.
  for (const auto &[key, c] : table.coeffs) {
    const auto &[s, j] = key;
    std::vector<int> s2(s.size()), j2(j.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto t = static_cast<std::size_t>(g.perm[i]);
      s2[t] = s[i];
      j2[t] = g.signs[t] > 0 ? j[i] : table.n[i] - j[i];
    }
    int sign = 1;
    for (std::size_t i = 0; i < s2.size(); ++i)
      if (g.signs[i] < 0 && s2[i] % 2 == 1)
        sign = -sign;
    out.add(s2, j2, sign > 0 ? c : -c);
  }
  return out;
}

// Termwise derivative of order ell_i in each k_i:
// (k+b)^(-s) -> (-1)^l s(s+1)...(s+l-1) (k+b)^(-s-l).
template <class S>
PolarTable<S> differentiate_table(const PolarTable<S> &table, const std::vector<int> &ell) {
  if (static_cast<int>(ell.size()) != table.p)
    fail("SizeMismatch", "derivative orders must have p entries");
  PolarTable<S> out = table;
  out.coeffs.clear();
  for (std::size_t i = 0; i < ell.size(); ++i) {
    if (ell[i] < 0)
      fail("InvalidArgument", "derivative orders must be >= 0");
    out.ell[i] += ell[i];
  }
  for (const auto &[key, c] : table.coeffs) {
    auto s = key.first;
    Rational factor(1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (int t = 0; t < ell[i]; ++t)
        factor *= Rational(-(s[i] + t));
      s[i] += ell[i];
    }
    out.add(s, key.second, c * S(factor));
  }
  return out;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_SERIES_HPP
