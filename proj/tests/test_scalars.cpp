#include <random>

#include <gtest/gtest.h>

#include <mzvdecomp/scalar.hpp>

using namespace mzvdecomp;

TEST(Rational, AddsAndCanonicalizes) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(4, -6).to_string(), "-2/3");
  EXPECT_EQ(Rational(0, 7).to_string(), "0");
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational(3).pow(-2), Rational(1, 9));
}

TEST(Rational, DivisionByZeroIsReported) {
  try {
    (void)(Rational(1) / Rational(0));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "DivisionByZero");
  }
}

TEST(Rational, BinomialWithNegativeUpper) {
  // C(-2, 3) = (-2)(-3)(-4)/6 = -4
  EXPECT_EQ(binomial(-2, 3), Rational(-4));
  EXPECT_EQ(binomial(5, 2), Rational(10));
  EXPECT_EQ(binomial(5, 0), Rational(1));
}

TEST(Cyclotomic, MinimalPolynomialRelations) {
  Cyclotomic z3 = Cyclotomic::zeta(3);
  EXPECT_TRUE((z3 * z3 + z3 + Cyclotomic(1)).is_zero());
  Cyclotomic z4 = Cyclotomic::zeta(4);
  EXPECT_EQ(z4 * z4, Cyclotomic(-1));
  EXPECT_TRUE((z4 * z4).is_rational());
  EXPECT_EQ(Cyclotomic::zeta(5).pow(5), Cyclotomic(1));
}

// Oracle: multiply the candidate polynomials for every divisor of 6 and
// compare against x^6 - 1 term by term.
TEST(Cyclotomic, PolynomialsMultiplyToXmMinusOne) {
  auto phi6 = cyclotomic_polynomial(6);
  ASSERT_EQ(phi6.size(), 3u);
  EXPECT_EQ(phi6[0], 1);
  EXPECT_EQ(phi6[1], -1);
  EXPECT_EQ(phi6[2], 1);
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<mpz_class>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<mpz_class>{1, 0, 1}));
  for (int m : {6, 8, 9, 10, 12}) {
    upoly::Poly prod{Rational(1)};
    for (int d = 1; d <= m; ++d) {
      if (m % d)
        continue;
      upoly::Poly f;
      for (auto &c : cyclotomic_polynomial(d))
        f.emplace_back(c);
      prod = upoly::mul(prod, f);
    }
    upoly::Poly expect(static_cast<std::size_t>(m) + 1, Rational(0));
    expect[0] = Rational(-1);
    expect[static_cast<std::size_t>(m)] = Rational(1);
    EXPECT_EQ(prod, expect) << "m=" << m;
  }
}

TEST(Cyclotomic, FieldAxiomsOnRandomTriples) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int m : {3, 4, 5, 7, 8, 12}) {
    auto rnd = [&] {
      std::vector<Rational> powers;
      for (int k = 0; k < m; ++k)
        powers.emplace_back(coef(rng), 1 + (coef(rng) + 5) % 3);
      return Cyclotomic::from_powers(m, powers);
    };
    for (int t = 0; t < 20; ++t) {
      Cyclotomic a = rnd(), b = rnd(), c = rnd();
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      if (!a.is_zero())
        EXPECT_EQ(a * a.inverse(), Cyclotomic(1));
    }
  }
}

TEST(Cyclotomic, MixingOrdersFails) {
  try {
    (void)(Cyclotomic::zeta(3) + Cyclotomic::zeta(4));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "FieldMismatch");
  }
  // Rationals embed into any field.
  EXPECT_NO_THROW((void)(Cyclotomic::zeta(3) + Cyclotomic(Rational(1, 2))));
}

TEST(Cyclotomic, PrintsPowerBasis) {
  Cyclotomic x = Cyclotomic(Rational(1, 2)) - Cyclotomic(3) * Cyclotomic::zeta(5, 2);
  EXPECT_EQ(x.to_string(), "1/2 - 3*zeta^2");
}

TEST(Embedding, CubeRootOfUnity) {
  PrecisionGuard g(256);
  ComplexFloat z = embed_numeric(Cyclotomic::zeta(3), 256);
  // Oracle: cos(2pi/3) = -1/2, sin(2pi/3) = sqrt(3)/2.
  BigFloat tol("1e-70");
  EXPECT_LT(abs(z.re + BigFloat(0.5)), tol);
  EXPECT_LT(abs(z.im - sqrt(BigFloat(3)) / 2), tol);
  ComplexFloat one = embed_numeric(Cyclotomic::zeta(1), 256);
  EXPECT_LT(abs(one.re - 1), tol);
  ComplexFloat q = embed_numeric(Rational(5, 6), 256);
  EXPECT_LT(abs(q.re - BigFloat(5) / 6), tol);
}

TEST(Embedding, IsRingHomomorphism) {
  PrecisionGuard g(256);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-9, 9);
  BigFloat tol("1e-60");
  for (int t = 0; t < 30; ++t) {
    int m = 3 + t % 8;
    std::vector<Rational> pa, pb;
    for (int k = 0; k < m; ++k) {
      pa.emplace_back(coef(rng), 2);
      pb.emplace_back(coef(rng), 3);
    }
    Cyclotomic a = Cyclotomic::from_powers(m, pa), b = Cyclotomic::from_powers(m, pb);
    ComplexFloat ea = embed_numeric(a, 256), eb = embed_numeric(b, 256);
    ComplexFloat sum = embed_numeric(a + b, 256), prod = embed_numeric(a * b, 256);
    EXPECT_LT(abs(sum - (ea + eb)), tol);
    EXPECT_LT(abs(prod - ea * eb), tol);
  }
}

TEST(Field, ParsesAndPrints) {
  EXPECT_EQ(Field::parse("Q").order, 1);
  EXPECT_EQ(Field::parse("Q(zeta_3)").order, 3);
  EXPECT_EQ(Field::parse("Q(zeta_3)").to_string(), "Q(zeta_3)");
  EXPECT_THROW(Field::parse("R"), Error);
}
