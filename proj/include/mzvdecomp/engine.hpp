#ifndef MZVDECOMP_ENGINE_HPP
#define MZVDECOMP_ENGINE_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "series.hpp"
#include "stuffle.hpp"

namespace mzvdecomp {

// kappa * sum over {m_1 >= m_2 + d_1, ..., m_{q-1} >= m_q + d_{q-1}, m_q >= L,
// all m_i >= 1} of prod_i (m_i + c_i)^(-s_i). Indices are zero-based, so d[i]
// links m_i and m_{i+1}.
template <class S>
struct ChainSum {
  S kappa = S(Rational(1));
  std::vector<int> s, c, d;
  int L = 1;

  int q() const { return static_cast<int>(s.size()); }
};

namespace detail {

struct ChainShape {
  std::vector<int> s, c, d;
  int L = 1;

  int q() const { return static_cast<int>(s.size()); }
  friend auto operator<=>(const ChainShape &, const ChainShape &) = default;
  friend bool operator==(const ChainShape &, const ChainShape &) = default;

  bool canonical() const {
    return L == 1 && std::all_of(c.begin(), c.end(), [](int x) { return x == 0; }) &&
           std::all_of(d.begin(), d.end(), [](int x) { return x == 1; });
  }

  // (q, sum c, sum |d - 1|, L): strictly decreases along every rewrite.
  std::tuple<int, long, long, int> measure() const {
    long sc = 0, sd = 0;
    for (int x : c)
      sc += x;
    for (int x : d)
      sd += std::abs(x - 1);
    return {q(), sc, sd, L};
  }
};

struct Factor {
  int shift;
  int exponent;
  Rational coeff;
};

// (x + a)^(-sa) (x + b)^(-sb) as a sum of single factors with shifts in {a, b}.
inline std::vector<Factor> merge_factors(int a, int sa, int b, int sb) {
  if (a == b)
    return {{a, sa + sb, Rational(1)}};
  std::vector<Factor> out;
  const Rational delta(b - a);
  for (int k = 1; k <= sa; ++k) {
    Rational c = binomial(sa + sb - k - 1, sa - k) * delta.pow(-(sa + sb - k));
    out.push_back({a, k, (sa - k) % 2 ? -c : c});
  }
  for (int k = 1; k <= sb; ++k) {
    Rational c = binomial(sa + sb - k - 1, sb - k) * (-delta).pow(-(sa + sb - k));
    out.push_back({b, k, (sb - k) % 2 ? -c : c});
  }
  return out;
}

class ChainReducer {
public:
  using Result = RegularizedCombination<Rational>;

  static ChainReducer &instance() {
    static ChainReducer r;
    return r;
  }

  Result reduce(const ChainShape &sh) {
    {
      std::shared_lock lock(mu_);
      auto it = memo_.find(sh);
      if (it != memo_.end())
        return it->second;
    }
    Result out = compute(sh);
    std::unique_lock lock(mu_);
    memo_.emplace(sh, out);
    return out;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return memo_.size();
  }

  void clear() {
    std::unique_lock lock(mu_);
    memo_.clear();
  }

private:
  mutable std::shared_mutex mu_;
  std::map<ChainShape, Result> memo_;

  Result child(const ChainShape &parent, const ChainShape &sh) {
    if (!(sh.measure() < parent.measure()))
      fail_internal("NonTermination", "rewrite did not decrease the termination measure");
    return reduce(sh);
  }

  static void check_positive(const ChainShape &sh) {
    if (sh.L < 1 || std::any_of(sh.c.begin(), sh.c.end(), [](int x) { return x < 0; }) ||
        std::any_of(sh.s.begin(), sh.s.end(), [](int x) { return x < 1; }))
      fail_internal("PositivityViolation", "chain has a denominator that can drop below 1");
  }

  // Merges m_i and m_{i+1} into one variable at position i carrying the
  // factors (m + fa)^(-s_i) (m + fb)^(-s_{i+1}); the constraint to m_{i-1}
  // moves by dout and the one to m_{i+2} (or the terminal bound) by din.
  Result merged(const ChainShape &sh, std::size_t i, int fa, int fb, int dout, int din) {
    ChainShape base = sh;
    base.s.erase(base.s.begin() + static_cast<long>(i) + 1);
    base.c.erase(base.c.begin() + static_cast<long>(i) + 1);
    base.d.erase(base.d.begin() + static_cast<long>(i));
    if (i > 0)
      base.d[i - 1] += dout;
    if (i < base.d.size())
      base.d[i] += din;
    else
      base.L = std::max(base.L + din, 1);
    Result out;
    for (const auto &f : merge_factors(fa, sh.s[i], fb, sh.s[i + 1])) {
      ChainShape m = base;
      m.s[i] = f.exponent;
      m.c[i] = f.shift;
      out += child(sh, m).scaled(f.coeff);
    }
    return out;
  }

  Result compute(const ChainShape &sh) {
    check_positive(sh);
    Result out;
    const int q = sh.q();
    if (q == 0) {
      out.add(0, Composition{}, Rational(1));
      return out;
    }
    if (sh.canonical())
      return regularize(sh.s);

    const auto last = static_cast<std::size_t>(q - 1);
    if (sh.c[last] > 0) {
      // innermost shift: m' = m_q + c_q
      ChainShape m = sh;
      m.L += m.c[last];
      if (last > 0)
        m.d[last - 1] -= m.c[last];
      m.c[last] = 0;
      return child(sh, m);
    }
    if (sh.L > 1) {
      // sum over m_q >= L = sum over m_q >= 1 minus the slices m_q = v < L
      ChainShape m = sh;
      m.L = 1;
      out = child(sh, m);
      for (int v = 1; v < sh.L; ++v) {
        Rational w = Rational(v + sh.c[last]).pow(-sh.s[last]);
        ChainShape slice = sh;
        slice.s.pop_back();
        slice.c.pop_back();
        if (last > 0) {
          slice.L = std::max(v + slice.d.back(), 1);
          slice.d.pop_back();
        } else {
          slice.L = 1;
        }
        out += child(sh, slice).scaled(-w);
      }
      return out;
    }
    for (std::size_t i = last; i-- > 0;) {
      const int d = sh.d[i];
      if (d <= 0) {
        // m_i >= m_{i+1} + 1, the diagonal m_i = m_{i+1}, and the bands
        // m_i = m_{i+1} - u reindexed on m' = m_i
        ChainShape m = sh;
        m.d[i] = 1;
        out = child(sh, m);
        out += merged(sh, i, sh.c[i], sh.c[i + 1], 0, 0);
        for (int u = 1; u <= -d; ++u)
          out += merged(sh, i, sh.c[i], sh.c[i + 1] + u, 0, -u);
        return out;
      }
      if (sh.c[i] > 0) {
        // m' = m_i + c_i; m' >= 1 + c_i is implied since d_i >= 1
        ChainShape m = sh;
        m.d[i] += m.c[i];
        if (i > 0)
          m.d[i - 1] -= m.c[i];
        m.c[i] = 0;
        return child(sh, m);
      }
      if (d >= 2) {
        // m_i >= m_{i+1} + 1 minus the bands m_i = m_{i+1} + t
        ChainShape m = sh;
        m.d[i] = 1;
        out = child(sh, m);
        for (int t = 1; t < d; ++t)
          out += merged(sh, i, sh.c[i] + t, sh.c[i + 1], t, 0).scaled(Rational(-1));
        return out;
      }
    }
    fail_internal("NonTermination", "no rewrite applies to a non-canonical chain");
  }
};

} // namespace detail

// One chain per nonzero table entry over k_1 >= ... >= k_p >= 1.
template <class S>
std::vector<ChainSum<S>> chains_from_table(const PolarTable<S> &table) {
  std::vector<ChainSum<S>> out;
  for (const auto &[key, coeff] : table.coeffs) {
    ChainSum<S> ch;
    ch.kappa = coeff;
    ch.s = key.first;
    for (int i = 0; i < table.p; ++i)
      ch.c.push_back(table.r[static_cast<std::size_t>(i)] + key.second[static_cast<std::size_t>(i)]);
    ch.d.assign(static_cast<std::size_t>(table.p - 1), 0);
    out.push_back(std::move(ch));
  }
  return out;
}

template <class S>
RegularizedCombination<S> reduce_chain(const ChainSum<S> &ch) {
  if (ch.c.size() != ch.s.size() || ch.d.size() + 1 != std::max<std::size_t>(ch.s.size(), 1))
    fail("SizeMismatch", "chain fields have inconsistent lengths");
  detail::ChainShape sh{ch.s, ch.c, ch.d, ch.L};
  auto reg = detail::ChainReducer::instance().reduce(sh);
  RegularizedCombination<S> out;
  for (const auto &[deg, part] : reg.parts())
    out.add(deg, detail::convert<S>(part).scaled(ch.kappa));
  return out;
}

inline std::size_t engine_cache_size() { return detail::ChainReducer::instance().size(); }
inline void clear_engine_cache() { detail::ChainReducer::instance().clear(); }

template <class S>
struct Decomposition {
  FormalCombination<S> combination;
  RegularizedCombination<S> total; // Lambda-graded sum of all chains
  bool depth_p_check = false;
};

// Sums the chains of a (possibly differentiated) table and checks that every
// Lambda power cancels and that the top depth matches the table projection.
template <class S>
Decomposition<S> decompose_table(const PolarTable<S> &table) {
  Decomposition<S> out;
  std::map<int, FormalCombination<S>> parts;
  for (const auto &ch : chains_from_table(table)) {
    auto reg = reduce_chain(ch);
    for (const auto &[deg, part] : reg.parts())
      parts[deg] += part;
  }
  for (const auto &[deg, part] : parts)
    out.total.add(deg, part);
  if (out.total.lambda_degree() >= 1)
    fail_internal("RegularizationResidue", "divergent parts do not cancel: " + out.total.to_string());
  out.combination = out.total.finite_part();
  if (!out.combination.all_convergent())
    fail_internal("RegularizationResidue", "a divergent symbol survived");
  out.depth_p_check = out.combination.depth_part(table.p) == depth_p_projection(table);
  if (!out.depth_p_check)
    fail_internal("DepthPMismatch", "top-depth coefficients disagree with the polar table");
  return out;
}

template <class S>
FormalCombination<S> decompose(const SeriesSpec<S> &spec) {
  validate(spec);
  return decompose_table(expand_partial_fractions(spec)).combination;
}

} // namespace mzvdecomp

#endif // MZVDECOMP_ENGINE_HPP
