#ifndef MZVDECOMP_TESTS_SUPPORT_HPP
#define MZVDECOMP_TESTS_SUPPORT_HPP

#include <random>
#include <string>

#include <mzvdecomp/actions.hpp>
#include <mzvdecomp/poly_parser.hpp>

namespace testsupport {

using namespace mzvdecomp;

inline std::string kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  return "none";
}

template <class S = Rational>
SeriesSpec<S> make_spec(std::vector<int> A, std::vector<int> n, std::vector<int> r, const std::string &P,
                        char frame = 'k', Field field = Field{}) {
  SeriesSpec<S> spec;
  spec.p = static_cast<int>(A.size());
  spec.A = std::move(A);
  spec.n = std::move(n);
  spec.r = std::move(r);
  spec.field = field;
  MultiPoly<S> poly = parse_poly<S>(P, spec.p, frame, field);
  spec.P = frame == 'k' ? poly : change_frame(poly, spec.K_frame(), spec.k_frame());
  return spec;
}

// Random numerator with per-variable degree at most deg[i].
inline MultiPoly<Rational> random_numerator(std::mt19937 &rng, const std::vector<int> &deg, int terms = 4) {
  const int p = static_cast<int>(deg.size());
  std::uniform_int_distribution<int> coef(-7, 7);
  MultiPoly<Rational> P(p);
  for (int t = 0; t < terms; ++t) {
    Exponents e(static_cast<std::size_t>(p));
    bool ok = true;
    for (int i = 0; i < p; ++i) {
      if (deg[static_cast<std::size_t>(i)] < 0) {
        ok = false;
        break;
      }
      e[static_cast<std::size_t>(i)] =
          std::uniform_int_distribution<int>(0, deg[static_cast<std::size_t>(i)])(rng);
    }
    if (ok)
      P.add_term(e, Rational(coef(rng), 1 + std::abs(coef(rng)) % 3));
  }
  return P;
}

// Random valid spec with p <= maxp, n_i <= 2, A_i <= 3 (A_i(n_i+1) >= 2 so
// that a nonzero numerator is allowed).
inline SeriesSpec<Rational> random_spec(std::mt19937 &rng, int maxp = 3, bool uniform = false,
                                        bool well_ordered = false) {
  SeriesSpec<Rational> spec;
  spec.p = std::uniform_int_distribution<int>(1, maxp)(rng);
  std::uniform_int_distribution<int> Ad(1, 3), nd(0, 2), rd(0, 3);
  int A0 = Ad(rng), n0 = nd(rng);
  for (int i = 0; i < spec.p; ++i) {
    int A = uniform ? A0 : Ad(rng), n = uniform ? n0 : nd(rng);
    if (A * (n + 1) < 2) {
      if (uniform) {
        A0 = 2;
      }
      A = 2;
    }
    spec.A.push_back(A);
    spec.n.push_back(n);
  }
  if (uniform)
    for (int i = 0; i < spec.p; ++i)
      spec.A[static_cast<std::size_t>(i)] = spec.A[0], spec.n[static_cast<std::size_t>(i)] = spec.n[0];
  spec.r.assign(static_cast<std::size_t>(spec.p), 0);
  for (int i = spec.p - 1; i >= 0; --i) {
    int base = 0;
    if (well_ordered && i + 1 < spec.p)
      base = spec.r[static_cast<std::size_t>(i) + 1] + spec.n[static_cast<std::size_t>(i) + 1] + 1;
    spec.r[static_cast<std::size_t>(i)] = base + rd(rng);
  }
  std::vector<int> deg;
  for (int i = 0; i < spec.p; ++i)
    deg.push_back(spec.A[static_cast<std::size_t>(i)] * (spec.n[static_cast<std::size_t>(i)] + 1) - 2);
  spec.P = random_numerator(rng, deg);
  if (spec.P.is_zero())
    spec.P = MultiPoly<Rational>::constant(spec.p, Rational(1));
  return spec;
}

// Random K-frame polynomial whose parity in K_i is e_i (mod 2), deg_i <= deg[i].
inline MultiPoly<Rational> random_parity_poly(std::mt19937 &rng, const std::vector<int> &deg, const std::vector<int> &e) {
  const auto p = deg.size();
  MultiPoly<Rational> P(static_cast<int>(p));
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int t = 0; t < 4; ++t) {
    Exponents ex(p);
    bool ok = true;
    for (std::size_t i = 0; i < p; ++i) {
      std::vector<int> choices;
      for (int d = 0; d <= deg[i]; ++d)
        if ((d - e[i]) % 2 == 0)
          choices.push_back(d);
      if (choices.empty()) {
        ok = false;
        break;
      }
      ex[i] = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    }
    if (ok)
      P.add_term(ex, Rational(coef(rng)));
  }
  return P;
}

} // namespace testsupport

#endif
