#ifndef MZVDECOMP_ACTIONS_HPP
#define MZVDECOMP_ACTIONS_HPP

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "composition.hpp"
#include "group.hpp"
#include "series.hpp"

namespace mzvdecomp {

// R(K) = numerator(K) / prod_i (K_i - n_i/2)_{n_i+1}^{A_i}, in the K-frame.
template <class S>
struct FamilyFunction {
  std::vector<int> A, n;
  MultiPoly<S> numerator;

  static FamilyFunction of(const SeriesSpec<S> &spec) { return {spec.A, spec.n, spec.P_in_K()}; }

  friend bool operator==(const FamilyFunction &, const FamilyFunction &) = default;
};

// rho(eps, gamma) R (K) = R(eps_gamma(1) K_gamma(1), ..., eps_gamma(p) K_gamma(p)).
// Factor i of the denominator moves to variable gamma(i); a sign flip pulls out
// (-1)^{A_i(n_i+1)} because (x - n/2)_{n+1} has the parity of n+1.
template <class S>
FamilyFunction<S> act_on_function(const GroupElement &g, const FamilyFunction<S> &R) {
  g.check();
  const int p = g.size();
  if (static_cast<int>(R.A.size()) != p || R.numerator.nvars() != p)
    fail("SizeMismatch", "group element size does not match function");
  FamilyFunction<S> out;
  out.A.resize(R.A.size());
  out.n.resize(R.n.size());
  int sign = 1;
  for (std::size_t i = 0; i < R.A.size(); ++i) {
    const auto t = static_cast<std::size_t>(g.perm[i]);
    out.A[t] = R.A[i];
    out.n[t] = R.n[i];
    if (g.signs[t] < 0 && (R.A[i] * (R.n[i] + 1)) % 2 == 1)
      sign = -sign;
  }
  out.numerator = R.numerator.substitute_signed_permutation(g.signs, g.perm);
  if (sign < 0)
    out.numerator = -out.numerator;
  return out;
}

// rho~(eps, gamma) zeta_f(s) = prod_i eps_i^{t_i} zeta_f(t), t_i = s_{gamma^-1(i)}.
template <class S>
FormalCombination<S> act_on_symbols(const GroupElement &g, const FormalCombination<S> &x) {
  g.check();
  const auto ginv = g.inverse_perm();
  FormalCombination<S> out;
  for (const auto &[s, c] : x.terms()) {
    if (depth(s) != g.size())
      fail("MixedDepth", "symbol action needs a combination of depth exactly " + std::to_string(g.size()));
    Composition t(s.size());
    int sign = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
      t[i] = s[static_cast<std::size_t>(ginv[i])];
      if (g.signs[i] < 0 && t[i] % 2 == 1)
        sign = -sign;
    }
    out.add(t, sign > 0 ? c : -c);
  }
  return out;
}

// Returns lambda with a = lambda * b, or nothing when not proportional.
template <class S>
std::optional<S> proportionality(const MultiPoly<S> &a, const MultiPoly<S> &b) {
  if (b.is_zero())
    return a.is_zero() ? std::optional<S>(S(Rational(1))) : std::nullopt;
  if (a.size() != b.size())
    return std::nullopt;
  const auto &[e, cb] = *b.terms().begin();
  S lambda = a.coefficient(e) / cb;
  if (lambda.is_zero() || !(b.scaled(lambda) == a))
    return std::nullopt;
  return lambda;
}

template <class S>
struct Subgroup {
  std::vector<GroupElement> elements; // sorted
  std::map<GroupElement, S> chi;
  bool degenerate = false; // set by detect_symmetries for R = 0

  int order() const { return static_cast<int>(elements.size()); }
  S value(const GroupElement &g) const {
    auto it = chi.find(g);
    if (it == chi.end())
      fail("InvalidArgument", "element " + g.to_string() + " is not in the subgroup");
    return it->second;
  }
};

template <class S>
struct CharacterSpec {
  std::vector<GroupElement> generators;
  std::vector<S> values;
};

// Breadth-first closure over the Cayley graph; every edge h -> g h must carry
// chi(g h) = chi(g) chi(h), otherwise the assignment is inconsistent.
template <class S>
Subgroup<S> close_subgroup(const CharacterSpec<S> &spec, int p) {
  if (spec.generators.size() != spec.values.size())
    fail("SizeMismatch", "each generator needs exactly one character value");
  for (const auto &g : spec.generators) {
    g.check();
    if (g.size() != p)
      fail("SizeMismatch", "generator " + g.to_string() + " has the wrong size");
  }
  for (const auto &v : spec.values)
    if (v.is_zero())
      fail("CharacterInconsistent", "character values must be nonzero");
  Subgroup<S> H;
  std::deque<GroupElement> queue{GroupElement::identity(p)};
  H.chi.emplace(queue.front(), S(Rational(1)));
  while (!queue.empty()) {
    GroupElement h = queue.front();
    queue.pop_front();
    const S vh = H.chi.at(h);
    for (std::size_t k = 0; k < spec.generators.size(); ++k) {
      GroupElement gh = spec.generators[k] * h;
      S v = spec.values[k] * vh;
      auto [it, inserted] = H.chi.try_emplace(gh, v);
      if (inserted)
        queue.push_back(gh);
      else if (!(it->second == v))
        fail("CharacterInconsistent", "element " + gh.to_string() + " receives values " +
                                          it->second.to_string() + " and " + v.to_string());
    }
  }
  for (const auto &[g, v] : H.chi)
    H.elements.push_back(g);
  return H;
}

// Brute force over all of G: every g with rho(g) R proportional to R, with the
// proportionality scalar. Needs uniform (n, A) so that G preserves the family.
template <class S>
Subgroup<S> detect_symmetries(const FamilyFunction<S> &R) {
  const int p = static_cast<int>(R.A.size());
  for (int i = 1; i < p; ++i)
    if (R.A[static_cast<std::size_t>(i)] != R.A[0] || R.n[static_cast<std::size_t>(i)] != R.n[0])
      fail("FamilyNotClosed", "symmetry detection needs uniform n and A");
  Subgroup<S> H;
  H.degenerate = R.numerator.is_zero();
  for (const auto &g : all_elements(p)) {
    auto lambda = proportionality(act_on_function(g, R).numerator, R.numerator);
    if (lambda) {
      H.elements.push_back(g);
      H.chi.emplace(g, *lambda);
    }
  }
  std::sort(H.elements.begin(), H.elements.end());
  // Closure and multiplicativity hold by construction; check them anyway.
  for (const auto &a : H.elements)
    for (const auto &b : H.elements) {
      auto it = H.chi.find(a * b);
      if (it == H.chi.end() || !(it->second == H.chi.at(a) * H.chi.at(b)))
        fail_internal("InternalError", "detected symmetries do not form a character");
    }
  return H;
}

// Pi(x) = |H|^-1 sum_{g in H} chi(g)^-1 rho~(g) x.
template <class S>
FormalCombination<S> project(const Subgroup<S> &H, const FormalCombination<S> &x) {
  FormalCombination<S> out;
  for (const auto &g : H.elements)
    out += act_on_symbols(g, x).scaled(S(Rational(1)) / H.chi.at(g));
  return out.scaled(S(Rational(1, H.order())));
}

template <class S>
bool is_admissible(const Subgroup<S> &H, const FormalCombination<S> &x) {
  return project(H, x) == x;
}

// Spanning set of the chi-isotypic subspace inside the box lower <= s_i <= upper_i:
// the images of all box symbols, normalized to leading coefficient 1 and
// deduplicated. Images of symbols in one orbit are proportional, so the result
// is a basis.
template <class S>
std::vector<FormalCombination<S>> admissible_projector(const Subgroup<S> &H, const std::vector<int> &upper,
                                                       int lower = 1) {
  const int p = static_cast<int>(upper.size());
  std::vector<FormalCombination<S>> basis;
  Composition s(static_cast<std::size_t>(p), lower);
  if (std::any_of(upper.begin(), upper.end(), [&](int u) { return u < lower; }))
    return basis;
  for (;;) {
    FormalCombination<S> img = project(H, FormalCombination<S>::single(s));
    if (!img.is_zero()) {
      S lead = img.terms().begin()->second;
      img = img.scaled(S(Rational(1)) / lead);
      if (std::find(basis.begin(), basis.end(), img) == basis.end())
        basis.push_back(img);
    }
    int i = p - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == upper[static_cast<std::size_t>(i)]) {
      s[static_cast<std::size_t>(i)] = lower;
      --i;
    }
    if (i < 0)
      break;
    ++s[static_cast<std::size_t>(i)];
  }
  return basis;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_ACTIONS_HPP
