#ifndef MZVDECOMP_STUFFLE_HPP
#define MZVDECOMP_STUFFLE_HPP

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include "composition.hpp"

namespace mzvdecomp {

namespace detail {

inline void quasi_shuffle_into(const int *u, std::size_t nu, const int *v, std::size_t nv, Composition &prefix,
                               const Rational &coeff, FormalCombination<Rational> &out) {
  if (nu == 0 || nv == 0) {
    Composition c = prefix;
    c.insert(c.end(), u, u + nu);
    c.insert(c.end(), v, v + nv);
    out.add(c, coeff);
    return;
  }
  prefix.push_back(u[0]);
  quasi_shuffle_into(u + 1, nu - 1, v, nv, prefix, coeff, out);
  prefix.back() = v[0];
  quasi_shuffle_into(u, nu, v + 1, nv - 1, prefix, coeff, out);
  prefix.back() = u[0] + v[0];
  quasi_shuffle_into(u + 1, nu - 1, v + 1, nv - 1, prefix, coeff, out);
  prefix.pop_back();
}

template <class To>
FormalCombination<To> convert(const FormalCombination<Rational> &x) {
  FormalCombination<To> out;
  for (const auto &[c, v] : x.terms())
    out.add(c, To(v));
  return out;
}

} // namespace detail

// Quasi-shuffle (stuffle) product of two compositions:
// (a,u')*(b,v') = a(u'*(b,v')) + b((a,u')*v') + (a+b)(u'*v').
inline FormalCombination<Rational> quasi_shuffle(const Composition &u, const Composition &v) {
  FormalCombination<Rational> out;
  Composition prefix;
  detail::quasi_shuffle_into(u.data(), u.size(), v.data(), v.size(), prefix, Rational(1), out);
  return out;
}

template <class S>
FormalCombination<S> quasi_shuffle(const FormalCombination<S> &x, const FormalCombination<S> &y) {
  FormalCombination<S> out;
  for (const auto &[u, a] : x.terms())
    for (const auto &[v, b] : y.terms()) {
      S ab = a * b;
      FormalCombination<Rational> uv = quasi_shuffle(u, v);
      for (const auto &[w, c] : uv.terms())
        out.add(w, ab * S(c));
    }
  return out;
}

// Harmonic regularization. With c = (1^a, v) and v not starting with 1, the
// quasi-shuffle (1)*(1^(a-1), v) contains (1^a, v) exactly a times, so
//   a * reg(1^a, v) = Lambda * reg(1^(a-1), v) - reg(rest)
// where rest has fewer leading ones. Results are cached process-wide.
inline RegularizedCombination<Rational> regularize(const Composition &c) {
  static std::shared_mutex mu;
  static std::map<Composition, RegularizedCombination<Rational>> cache;

  RegularizedCombination<Rational> out;
  if (is_convergent(c)) {
    out.add(0, c, Rational(1));
    return out;
  }
  {
    std::shared_lock lock(mu);
    auto it = cache.find(c);
    if (it != cache.end())
      return it->second;
  }

  std::size_t a = 0;
  while (a < c.size() && c[a] == 1)
    ++a;
  Composition tail(c.begin() + 1, c.end()); // (1^(a-1), v)
  FormalCombination<Rational> rest = quasi_shuffle(Composition{1}, tail);
  rest.add(c, Rational(-static_cast<long>(a)));

  out = regularize(tail).shifted(1);
  for (const auto &[w, coeff] : rest.terms())
    out += regularize(w).scaled(-coeff);
  out = out.scaled(Rational(1, static_cast<long>(a)));

  std::unique_lock lock(mu);
  cache.emplace(c, out);
  return out;
}

// Linear extension of regularize.
template <class S>
RegularizedCombination<S> reduce(const FormalCombination<S> &x) {
  RegularizedCombination<S> out;
  for (const auto &[c, coeff] : x.terms()) {
    if (is_convergent(c)) {
      out.add(0, c, coeff);
      continue;
    }
    RegularizedCombination<Rational> reg = regularize(c);
    for (const auto &[d, part] : reg.parts())
      out.add(d, detail::convert<S>(part).scaled(coeff));
  }
  return out;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_STUFFLE_HPP
