#ifndef MZVDECOMP_THEOREMS_HPP
#define MZVDECOMP_THEOREMS_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "actions.hpp"
#include "engine.hpp"
#include "numeric.hpp"

namespace mzvdecomp {

struct TheoremReport {
  std::string theorem;
  std::string label; // instance description for scans
  bool hypothesis_verified = false;
  std::string digest; // FNV-1a of the combination text
  std::vector<std::pair<Composition, std::string>> combination;
  bool membership = false;
  std::vector<Composition> offending;
  std::optional<double> residual;
  double seconds = 0;
  std::vector<std::string> notes;

  // Scanner fields.
  bool skipped = false;
  std::string coeff_22 = "0", coeff_222 = "0";
  bool soft_finding = false;     // nonzero target coefficient, but the numeric oracle passed
  bool max_weight_zero = false;  // statistic only
  bool support_in_basis = false; // statistic only

  bool pass() const { return skipped || (hypothesis_verified && membership); }
};

namespace detail {

inline std::string fnv_digest(const std::string &text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class S>
void record_combination(TheoremReport &rep, const FormalCombination<S> &x) {
  rep.digest = fnv_digest(x.to_string());
  rep.combination.clear();
  for (const auto &[c, v] : x.terms())
    rep.combination.emplace_back(c, v.to_string());
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline bool field_contains(const Field &, const Rational &) { return true; }

inline bool field_contains(const Field &f, const Cyclotomic &x) {
  if (x.is_rational())
    return true;
  const int m = f.order, k = x.order();
  return m % k == 0 || (m % 2 == 1 && (2 * m) % k == 0);
}

inline Composition rotate_left(const Composition &s) {
  Composition t(s.begin() + 1, s.end());
  t.push_back(s.front());
  return t;
}

template <class S>
std::pair<TheoremReport, FormalCombination<S>> verify_main_impl(const SeriesSpec<S> &spec,
                                                                const CharacterSpec<S> &character,
                                                                const std::string &theorem) {
  Stopwatch clock;
  validate(spec);
  TheoremReport rep;
  rep.theorem = theorem;
  const Subgroup<S> H = close_subgroup(character, spec.p);
  for (const auto &g : H.elements)
    for (int i = 0; i < spec.p; ++i) {
      const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(g.perm[a]);
      if (spec.A[a] != spec.A[b] || spec.n[a] != spec.n[b])
        fail("FamilyNotClosed", "element " + g.to_string() + " mixes indices with different (A, n)");
    }
  const auto R = FamilyFunction<S>::of(spec);
  for (const auto &g : H.elements) {
    auto image = act_on_function(g, R);
    if (!(image.numerator == R.numerator.scaled(H.value(g))))
      fail("HypothesisFails", "rho(g) R != chi(g) R for g = " + g.to_string());
  }
  rep.hypothesis_verified = true;
  const auto x = decompose(spec);
  record_combination(rep, x);
  const auto top = x.depth_part(spec.p);
  const auto diff = project(H, top) - top;
  rep.membership = diff.is_zero();
  for (const auto &[s, v] : diff.terms())
    rep.offending.push_back(s);
  rep.notes.push_back("subgroup order " + std::to_string(H.order()));
  rep.seconds = clock.seconds();
  return {rep, x};
}

} // namespace detail

// Checks rho(g) R = chi(g) R on all of H, decomposes, and tests whether the
// projector fixes the depth-p part.
template <class S>
TheoremReport verify_main(const SeriesSpec<S> &spec, const CharacterSpec<S> &character,
                          const std::string &theorem = "main") {
  return detail::verify_main_impl(spec, character, theorem).first;
}

// Parity version: for every i with e_i given, P(.., -k_i - 2r_i - n_i, ..) must
// equal (-1)^{A_i(n_i+1)+e_i} P, and then depth-p symbols have s_i = e_i mod 2.
// With A_i = 3 and all e_i given only the single symbol sigma survives.
template <class S>
TheoremReport verify_parity(const SeriesSpec<S> &spec, const std::vector<std::optional<int>> &e,
                            const std::string &theorem = "parity") {
  detail::Stopwatch clock;
  validate(spec);
  if (static_cast<int>(e.size()) != spec.p)
    fail("SizeMismatch", "one parity entry per variable is required");
  TheoremReport rep;
  rep.theorem = theorem;
  for (int i = 0; i < spec.p; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    if (!e[ii])
      continue;
    const auto reflected = spec.P.substitute_affine(i, -1, S(Rational(-2 * spec.r[ii] - spec.n[ii])));
    const bool odd = (spec.A[ii] * (spec.n[ii] + 1) + *e[ii]) % 2 != 0;
    if (!(reflected == (odd ? -spec.P : spec.P)))
      fail("HypothesisFails", "reflection symmetry fails for variable " + std::to_string(i + 1));
  }
  rep.hypothesis_verified = true;
  const auto x = decompose(spec);
  detail::record_combination(rep, x);
  const auto top = x.depth_part(spec.p);
  bool all_given = true, unique_case = true;
  Composition sigma(static_cast<std::size_t>(spec.p));
  for (int i = 0; i < spec.p; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    all_given = all_given && e[ii].has_value();
    unique_case = unique_case && spec.A[ii] == 3;
    if (e[ii])
      sigma[ii] = *e[ii] % 2 == 0 ? 2 : 3;
  }
  unique_case = unique_case && all_given;
  rep.membership = true;
  for (const auto &[s, v] : top.terms()) {
    bool ok = true;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (e[i] && (s[i] - *e[i]) % 2 != 0)
        ok = false;
    if (unique_case && s != sigma)
      ok = false;
    if (!ok) {
      rep.membership = false;
      rep.offending.push_back(s);
    }
  }
  if (unique_case)
    rep.notes.push_back("sigma " + to_string(sigma) + " coefficient " + top.coefficient(sigma).to_string());
  rep.seconds = clock.seconds();
  return rep;
}

// p = 2 family with numerator (K_1 + K_2)^e (K_1 - K_2)^f, A = (A, A),
// n = (n, n), r = (r, 0).
inline SeriesSpec<Rational> pair_spec(int A, int n, int r, int e, int f) {
  if (e < 0 || f < 0)
    fail("InvalidArgument", "exponents must be nonnegative");
  SeriesSpec<Rational> spec;
  spec.p = 2;
  spec.A = {A, A};
  spec.n = {n, n};
  spec.r = {r, 0};
  const auto K1 = MultiPoly<Rational>::variable(2, 0), K2 = MultiPoly<Rational>::variable(2, 1);
  spec.P = change_frame((K1 + K2).pow(e) * (K1 - K2).pow(f), spec.K_frame(), spec.k_frame());
  return spec;
}

// Any p = 2 spec with uniform (A, n), r_2 = 0 and the symmetries of the (e, f)
// numerator; the hypothesis check rejects numerators without them.
inline TheoremReport verify_pair(const SeriesSpec<Rational> &spec, int e, int f) {
  if (spec.p != 2 || spec.A[0] != spec.A[1] || spec.n[0] != spec.n[1] || spec.r[1] != 0)
    fail("InvalidArgument", "the pair check needs p = 2, uniform A and n, and r_2 = 0");
  const int A = spec.A[0], n = spec.n[0], r = spec.r[0];
  if (e < 0 || f < 0 || e + f > A * (n + 1) - 2)
    fail("InvalidArgument", "need 0 <= e, f and e + f <= A(n+1) - 2");
  const GroupElement tau{{1, 1}, {1, 0}};
  const GroupElement minus = GroupElement::flips({-1, -1});
  const Rational sf(f % 2 ? -1 : 1), sef((e + f) % 2 ? -1 : 1);
  auto [rep, x] = detail::verify_main_impl(spec, CharacterSpec<Rational>{{tau, minus}, {sf, sef}}, "3.4");
  rep.label = "A=" + std::to_string(A) + " n=" + std::to_string(n) + " r=" + std::to_string(r) +
              " e=" + std::to_string(e) + " f=" + std::to_string(f);

  const auto top = x.depth_part(2);
  auto flag = [&](const Composition &s) {
    rep.membership = false;
    if (std::find(rep.offending.begin(), rep.offending.end(), s) == rep.offending.end())
      rep.offending.push_back(s);
  };
  for (const auto &[s, v] : top.terms()) {
    if ((s[0] + s[1] - e - f) % 2 != 0 || s[0] < 2 || s[1] < 2 || s[0] > A || s[1] > A)
      flag(s);
    if (!(top.coefficient({s[1], s[0]}) == v * sf))
      flag(s);
  }
  if (A <= 3 && e % 2 == 1 && f % 2 == 1) {
    rep.notes.push_back("depth-2 part must vanish");
    for (const auto &[s, v] : top.terms())
      flag(s);
  }
  const int S = r >= n + 1 ? A : 2 * A;
  rep.notes.push_back("depth-1 bound " + std::to_string(S));
  const auto depth1 = x.depth_part(1);
  for (const auto &[s, v] : depth1.terms())
    if (s[0] > S)
      flag(s);
  return rep;
}

inline TheoremReport verify_pair(int A, int n, int r, int e, int f) {
  return verify_pair(pair_spec(A, n, r, e, f), e, f);
}

// P(K_2, ..., K_p, K_1) = xi P(K_1, ..., K_p) gives the relation
// lambda[s_2, ..., s_p, s_1] = xi lambda[s] on the depth-p part.
template <class S>
TheoremReport verify_cyclic(const SeriesSpec<S> &spec, const S &xi) {
  if (!(scalar_power(xi, spec.p) == S(Rational(1))))
    fail("InvalidArgument", "xi must be a p-th root of unity");
  if (!detail::field_contains(spec.field, xi))
    fail("UnsupportedField", "xi = " + xi.to_string() + " is not in " + spec.field.to_string());
  auto [rep, x] = detail::verify_main_impl(spec, CharacterSpec<S>{{GroupElement::rotation(spec.p)}, {xi}}, "3.7");
  if (spec.p < 2)
    return rep;
  const auto top = x.depth_part(spec.p);
  for (const auto &[s, v] : top.terms()) {
    const auto t = detail::rotate_left(s);
    if (!(top.coefficient(t) == xi * v)) {
      rep.membership = false;
      rep.offending.push_back(s);
    }
  }
  return rep;
}

struct ScanOptions {
  int jobs = 1;
  bool numeric_check = true; // soft check on nonzero target coefficients
  double tolerance = 1e-20;
};

namespace detail {

struct ScanInstance {
  std::string label;
  MultiPoly<Rational> P_K;
};

inline SeriesSpec<Rational> scan_spec(int n) {
  SeriesSpec<Rational> spec;
  spec.p = 3;
  spec.A = {3, 3, 3};
  spec.n = {n, n, n};
  spec.r = {2 * n + 2, n + 1, 0};
  return spec;
}

inline std::vector<std::vector<int>> exponent_box(int count, int bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(count), 0);
  for (;;) {
    out.push_back(v);
    int i = count - 1;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == bound)
      v[static_cast<std::size_t>(i--)] = 0;
    if (i < 0)
      return out;
    ++v[static_cast<std::size_t>(i)];
  }
}

inline std::string exps_label(const std::vector<int> &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::vector<ScanInstance> family_instances(int n, int family) {
  const int a = 3 * (n + 1), bound = 3 * n + 1;
  const auto K = [](int i) { return MultiPoly<Rational>::variable(3, i); };
  auto par = [](int x, int y) { return (x - y) % 2 == 0; };
  std::vector<ScanInstance> out;
  const int count = family == 2 ? 4 : 3;
  for (const auto &v : exponent_box(count, bound)) {
    const int e = v[0], f = v[1], g = v[2];
    MultiPoly<Rational> P;
    switch (family) {
    case 1:
      if (!par(e, a + 1) || !par(g, a + 1))
        continue;
      P = K(0).pow(e) * K(1).pow(f) * K(2).pow(g);
      break;
    case 2:
      if (!par(e, a + 1) || !par(g, a))
        continue;
      P = K(1).pow(e) * (K(0) - K(2)).pow(f) * (K(0) + K(2)).pow(g) * (K(0) * K(2)).pow(v[3]);
      break;
    case 3:
      if (!par(f, a + 1) || !par(g, a + 1))
        continue;
      P = K(0).pow(e) * (K(1) * K(1) - K(2) * K(2)).pow(f) * (K(1) * K(2)).pow(g);
      break;
    case 4:
      if (!par(f, a + 1) || !par(g, a + 1))
        continue;
      P = K(2).pow(e) * (K(0) * K(0) - K(1) * K(1)).pow(f) * (K(0) * K(1)).pow(g);
      break;
    default:
      fail("InvalidArgument", "family must be 1, 2, 3 or 4");
    }
    out.push_back({"family " + std::to_string(family) + " exponents " + exps_label(v), P});
  }
  return out;
}

template <class F>
std::vector<TheoremReport> run_parallel(std::size_t count, int jobs, F &&work) {
  std::vector<TheoremReport> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        out[i] = work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return out;
}

// Shared per-instance body of both scanners. `targets` are the symbols whose
// coefficients are expected to vanish.
inline TheoremReport scan_instance(const std::string &theorem, int n, const ScanInstance &inst,
                                   const std::vector<Composition> &basis, const ScanOptions &opt,
                                   const std::optional<Composition> &depth3_only) {
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = theorem;
  rep.label = "n=" + std::to_string(n) + " " + inst.label;
  auto spec = scan_spec(n);
  spec.P = change_frame(inst.P_K, spec.K_frame(), spec.k_frame());
  const auto an = analyze(spec);
  if (!an.convergent || !an.degree_ok) {
    rep.skipped = true;
    rep.notes.push_back(an.convergent ? "degree bound exceeded" : "not convergent");
    rep.seconds = clock.seconds();
    return rep;
  }
  rep.hypothesis_verified = true;
  const auto x = decompose(spec);
  record_combination(rep, x);
  const Rational c22 = x.coefficient({2, 2}), c222 = x.coefficient({2, 2, 2});
  rep.coeff_22 = c22.to_string();
  rep.coeff_222 = c222.to_string();
  bool support_ok = true;
  const auto depth3 = x.depth_part(3);
  if (depth3_only)
    for (const auto &[s, v] : depth3.terms())
      if (s != *depth3_only) {
        support_ok = false;
        rep.offending.push_back(s);
      }
  if (!c22.is_zero())
    rep.offending.push_back({2, 2});
  if (!c222.is_zero())
    rep.offending.push_back({2, 2, 2});
  const bool targets_zero = c22.is_zero() && c222.is_zero();
  rep.membership = support_ok && targets_zero;
  if (support_ok && !targets_zero && opt.numeric_check) {
    // A different but valid combination still matches the series numerically.
    try {
      const auto check = check_decomposition(spec, x, opt.tolerance);
      rep.residual = check.residual.convert_to<double>();
      if (check.pass) {
        rep.soft_finding = true;
        rep.membership = true;
        rep.notes.push_back("construction-difference finding: target coefficient nonzero, numeric oracle passes");
      }
    } catch (const Error &err) {
      rep.notes.push_back("numeric check failed: " + std::string(err.what()));
    }
  }
  int max_weight = 0;
  for (int A : spec.A)
    max_weight += A;
  rep.max_weight_zero = true;
  rep.support_in_basis = true;
  for (const auto &[s, v] : x.terms()) {
    if (weight(s) == max_weight)
      rep.max_weight_zero = false;
    if (std::find(basis.begin(), basis.end(), s) == basis.end())
      rep.support_in_basis = false;
  }
  rep.seconds = clock.seconds();
  return rep;
}

} // namespace detail

// Every exponent tuple of the family with each exponent at most 3n + 1;
// tuples outside the degree or convergence conditions are reported as skipped.
inline std::vector<TheoremReport> scan_theorem41(int n, int family, const ScanOptions &opt = {}) {
  if (n < 0 || n > 3)
    fail("InvalidArgument", "n must be in 0..3");
  const auto instances = detail::family_instances(n, family);
  std::vector<Composition> basis{{}};
  for (int q = 1; q <= 3; ++q)
    for (const auto &v : detail::exponent_box(q, 1)) {
      Composition s;
      for (int b : v)
        s.push_back(2 + b);
      if (s != Composition{2, 2} && s != Composition{2, 2, 2})
        basis.push_back(s);
    }
  return detail::run_parallel(instances.size(), opt.jobs, [&](std::size_t i) {
    return detail::scan_instance("4.1", n, instances[i], basis, opt, std::nullopt);
  });
}

// Monomials K_1^a K_2^b K_3^c with a odd, b even, c odd: exactly the
// polynomials satisfying the three reflection conditions.
inline std::vector<TheoremReport> scan_conjecture18(int n, const ScanOptions &opt = {}) {
  if (n < 0 || n > 2)
    fail("InvalidArgument", "n must be in 0..2");
  const int sigma = n % 2 == 0 ? 2 : 3, other = 5 - sigma;
  const Composition target{sigma, other, sigma};
  std::vector<detail::ScanInstance> instances;
  const auto K = [](int i) { return MultiPoly<Rational>::variable(3, i); };
  for (const auto &v : detail::exponent_box(3, 3 * n + 1)) {
    if (v[0] % 2 != 1 || v[1] % 2 != 0 || v[2] % 2 != 1)
      continue;
    instances.push_back({"monomial " + detail::exps_label(v), K(0).pow(v[0]) * K(1).pow(v[1]) * K(2).pow(v[2])});
  }
  const std::vector<Composition> basis{{}, {2}, {3}, {2, 3}, {3, 2}, {3, 3}, target};
  return detail::run_parallel(instances.size(), opt.jobs, [&](std::size_t i) {
    return detail::scan_instance("1.8", n, instances[i], basis, opt, target);
  });
}

} // namespace mzvdecomp

#endif // MZVDECOMP_THEOREMS_HPP
