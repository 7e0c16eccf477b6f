#ifndef MZVDECOMP_COMPOSITION_HPP
#define MZVDECOMP_COMPOSITION_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace mzvdecomp {

// A composition (s_1, ..., s_q) indexing the symbol zeta_f(s_1, ..., s_q).
using Composition = std::vector<int>;

inline int weight(const Composition &c) { return std::accumulate(c.begin(), c.end(), 0); }
inline int depth(const Composition &c) { return static_cast<int>(c.size()); }
inline bool is_convergent(const Composition &c) { return c.empty() || c.front() >= 2; }

inline std::string to_string(const Composition &c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i)
    out += (i ? "," : "") + std::to_string(c[i]);
  return out + ")";
}

// Orders compositions by depth, then weight, then lexicographically.
struct CompositionOrder {
  bool operator()(const Composition &a, const Composition &b) const {
    if (a.size() != b.size())
      return a.size() < b.size();
    int wa = weight(a), wb = weight(b);
    if (wa != wb)
      return wa < wb;
    return a < b;
  }
};

// Finite linear combination of formal symbols with no zero coefficients.
template <class S>
class FormalCombination {
public:
  using Map = std::map<Composition, S, CompositionOrder>;

  FormalCombination() = default;

  static FormalCombination single(const Composition &c, const S &coeff = S(Rational(1))) {
    FormalCombination r;
    r.add(c, coeff);
    return r;
  }

  void add(const Composition &c, const S &coeff) {
    if (coeff.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(c, coeff);
    if (!inserted) {
      it->second = it->second + coeff;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  S coefficient(const Composition &c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? S(Rational(0)) : it->second;
  }

  const Map &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  FormalCombination &operator+=(const FormalCombination &o) {
    for (const auto &[c, v] : o.terms_)
      add(c, v);
    return *this;
  }
  FormalCombination &operator-=(const FormalCombination &o) {
    for (const auto &[c, v] : o.terms_)
      add(c, -v);
    return *this;
  }
  friend FormalCombination operator+(FormalCombination a, const FormalCombination &b) { return a += b; }
  friend FormalCombination operator-(FormalCombination a, const FormalCombination &b) { return a -= b; }

  FormalCombination scaled(const S &s) const {
    FormalCombination r;
    if (s.is_zero())
      return r;
    for (const auto &[c, v] : terms_)
      r.terms_.emplace(c, v * s);
    return r;
  }

  FormalCombination depth_part(int q) const {
    FormalCombination r;
    for (const auto &[c, v] : terms_)
      if (depth(c) == q)
        r.terms_.emplace(c, v);
    return r;
  }

  int max_depth() const {
    int d = -1;
    for (const auto &[c, v] : terms_)
      d = std::max(d, depth(c));
    return d;
  }

  bool all_convergent() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto &kv) { return is_convergent(kv.first); });
  }

  friend bool operator==(const FormalCombination &a, const FormalCombination &b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (const auto &[c, v] : terms_) {
      if (!out.empty())
        out += " + ";
      out += "(" + v.to_string() + ")*z" + mzvdecomp::to_string(c);
    }
    return out;
  }

private:
  Map terms_;
};

// Graded by powers of the divergence symbol Lambda; every stored composition
// is convergent.
template <class S>
class RegularizedCombination {
public:
  void add(int lambda_degree, const FormalCombination<S> &x) {
    if (x.is_zero())
      return;
    auto &slot = parts_[lambda_degree];
    slot += x;
    if (slot.is_zero())
      parts_.erase(lambda_degree);
  }

  void add(int lambda_degree, const Composition &c, const S &coeff) {
    add(lambda_degree, FormalCombination<S>::single(c, coeff));
  }

  RegularizedCombination &operator+=(const RegularizedCombination &o) {
    for (const auto &[d, x] : o.parts_)
      add(d, x);
    return *this;
  }

  RegularizedCombination scaled(const S &s) const {
    RegularizedCombination r;
    if (s.is_zero())
      return r;
    for (const auto &[d, x] : parts_)
      r.parts_.emplace(d, x.scaled(s));
    return r;
  }

  // Multiply by Lambda^k.
  RegularizedCombination shifted(int k) const {
    RegularizedCombination r;
    for (const auto &[d, x] : parts_)
      r.parts_.emplace(d + k, x);
    return r;
  }

  const std::map<int, FormalCombination<S>> &parts() const { return parts_; }

  FormalCombination<S> finite_part() const {
    auto it = parts_.find(0);
    return it == parts_.end() ? FormalCombination<S>{} : it->second;
  }

  // Highest Lambda power present, or -1 when zero.
  int lambda_degree() const { return parts_.empty() ? -1 : parts_.rbegin()->first; }
  bool is_zero() const { return parts_.empty(); }

  friend bool operator==(const RegularizedCombination &a, const RegularizedCombination &b) {
    return a.parts_ == b.parts_;
  }

  std::string to_string() const {
    if (parts_.empty())
      return "0";
    std::string out;
    for (const auto &[d, x] : parts_) {
      if (!out.empty())
        out += " + ";
      out += "L^" + std::to_string(d) + "*[" + x.to_string() + "]";
    }
    return out;
  }

private:
  std::map<int, FormalCombination<S>> parts_;
};

// Signed permutation sum over all orderings of the parts.
template <class S = Rational>
FormalCombination<S> antisymmetrize(const Composition &s) {
  std::vector<int> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0);
  FormalCombination<S> out;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (idx[a] > idx[b])
          ++inversions;
    Composition c(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      c[i] = s[static_cast<std::size_t>(idx[i])];
    out.add(c, S(Rational(inversions % 2 == 0 ? 1 : -1)));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_COMPOSITION_HPP
