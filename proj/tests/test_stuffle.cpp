#include <random>

#include <gtest/gtest.h>

#include <mzvdecomp/stuffle.hpp>

using namespace mzvdecomp;

using QComb = FormalCombination<Rational>;

namespace {

QComb comb(std::initializer_list<std::pair<Composition, Rational>> xs) {
  QComb out;
  for (const auto &[c, v] : xs)
    out.add(c, v);
  return out;
}

// Independent oracle: the truncated harmonic sums Z_N(s) = sum over
// N >= m_1 > ... > m_q >= 1 satisfy the quasi-shuffle relation exactly.
Rational harmonic(const Composition &s, int N) {
  // inner[m] = value of the tail (s_i..s_q) with its first index equal to m
  std::vector<Rational> inner(static_cast<std::size_t>(N) + 1, Rational(0));
  bool first = true;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    std::vector<Rational> next(inner.size(), Rational(0));
    Rational below(0);
    for (int m = 1; m <= N; ++m) {
      next[static_cast<std::size_t>(m)] = (first ? Rational(1) : below) / Rational(m).pow(*it);
      below += inner[static_cast<std::size_t>(m)];
    }
    inner = std::move(next);
    first = false;
  }
  if (s.empty())
    return Rational(1);
  Rational total(0);
  for (int m = 1; m <= N; ++m)
    total += inner[static_cast<std::size_t>(m)];
  return total;
}

Rational harmonic(const QComb &x, int N) {
  Rational t(0);
  for (const auto &[c, v] : x.terms())
    t += v * harmonic(c, N);
  return t;
}

Composition random_word(std::mt19937 &rng) {
  std::uniform_int_distribution<int> len(0, 3), part(1, 4);
  Composition c(static_cast<std::size_t>(len(rng)));
  for (auto &x : c)
    x = part(rng);
  return c;
}

} // namespace

TEST(QuasiShuffle, SmallProducts) {
  EXPECT_EQ(quasi_shuffle({2}, {3}), comb({{{2, 3}, 1}, {{3, 2}, 1}, {{5}, 1}}));
  EXPECT_EQ(quasi_shuffle({2}, {2}), comb({{{2, 2}, 2}, {{4}, 1}}));
  EXPECT_EQ(quasi_shuffle({}, {3, 1}), comb({{{3, 1}, 1}}));
}

TEST(QuasiShuffle, MatchesTruncatedHarmonicSums) {
  std::mt19937 rng(21);
  for (int t = 0; t < 40; ++t) {
    Composition u = random_word(rng), v = random_word(rng);
    for (int N : {1, 4, 7})
      EXPECT_EQ(harmonic(u, N) * harmonic(v, N), harmonic(quasi_shuffle(u, v), N));
  }
}

TEST(QuasiShuffle, CommutativeAndAssociative) {
  std::mt19937 rng(17);
  for (int t = 0; t < 200; ++t) {
    Composition a = random_word(rng), b = random_word(rng), c = random_word(rng);
    EXPECT_EQ(quasi_shuffle(a, b), quasi_shuffle(b, a));
    QComb left = quasi_shuffle(quasi_shuffle(a, b), QComb::single(c));
    QComb right = quasi_shuffle(QComb::single(a), quasi_shuffle(b, c));
    EXPECT_EQ(left, right);
  }
}

TEST(Regularize, Examples) {
  RegularizedCombination<Rational> r21 = regularize({2, 1});
  EXPECT_EQ(r21.lambda_degree(), 0);
  EXPECT_EQ(r21.finite_part(), comb({{{2, 1}, 1}}));

  RegularizedCombination<Rational> r1 = regularize({1});
  EXPECT_EQ(r1.lambda_degree(), 1);
  EXPECT_EQ(r1.parts().at(1), comb({{{}, 1}}));
  EXPECT_TRUE(r1.finite_part().is_zero());

  RegularizedCombination<Rational> r12 = regularize({1, 2});
  RegularizedCombination<Rational> expect;
  expect.add(1, {2}, Rational(1));
  expect.add(0, {2, 1}, Rational(-1));
  expect.add(0, {3}, Rational(-1));
  EXPECT_EQ(r12, expect);
}

// Oracle: with Lambda -> Z_N(1) the regularized form reproduces the truncated
// harmonic sum exactly, since every step is a finite-N quasi-shuffle identity.
TEST(Regularize, ExactAtFiniteCutoff) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> len(1, 4), part(1, 3);
  for (int t = 0; t < 40; ++t) {
    Composition c(static_cast<std::size_t>(len(rng)));
    for (auto &x : c)
      x = part(rng);
    if (t % 3 == 0)
      c.front() = 1;
    auto reg = regularize(c);
    int leading = 0;
    while (leading < static_cast<int>(c.size()) && c[static_cast<std::size_t>(leading)] == 1)
      ++leading;
    EXPECT_EQ(reg.lambda_degree(), leading);
    for (const auto &[d, x] : reg.parts())
      EXPECT_TRUE(x.all_convergent());
    for (int N : {3, 6}) {
      Rational H = harmonic(Composition{1}, N), total(0);
      for (const auto &[d, x] : reg.parts())
        total += H.pow(d) * harmonic(x, N);
      EXPECT_EQ(total, harmonic(c, N)) << to_string(c);
    }
  }
}

TEST(Reduce, Linearity) {
  QComb x = comb({{{2}, 3}, {{1, 2}, -1}});
  auto r = reduce(x);
  EXPECT_EQ(r.parts().at(1), comb({{{2}, -1}}));
  EXPECT_EQ(r.finite_part(), comb({{{2}, 3}, {{2, 1}, 1}, {{3}, 1}}));
  EXPECT_TRUE(reduce(comb({{{1}, 1}, {{1}, -1}})).is_zero());
  QComb conv = comb({{{3, 1, 2}, Rational(1, 2)}, {{}, 4}});
  EXPECT_EQ(reduce(conv).finite_part(), conv);
  EXPECT_EQ(reduce(conv).lambda_degree(), 0);
}

TEST(Antisymmetrize, Examples) {
  EXPECT_EQ(antisymmetrize({2, 3}), comb({{{2, 3}, 1}, {{3, 2}, -1}}));
  EXPECT_TRUE(antisymmetrize({3, 3}).is_zero());
  EXPECT_EQ(antisymmetrize({5}), comb({{{5}, 1}}));
  EXPECT_EQ(antisymmetrize({2, 3, 4}).size(), 6u);
}
