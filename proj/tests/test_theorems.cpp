#include <random>

#include <gtest/gtest.h>

#include <mzvdecomp/theorems.hpp>

#include "support.hpp"

using namespace mzvdecomp;
using namespace testsupport;

using QComb = FormalCombination<Rational>;

namespace {

const GroupElement kSwap{{1, 1}, {1, 0}};

QComb combination_of(const TheoremReport &rep) {
  QComb x;
  for (const auto &[s, v] : rep.combination)
    x.add(s, Rational::parse(v));
  return x;
}

} // namespace

TEST(VerifyMain, AntisymmetricInstance) {
  auto spec = make_spec({3, 3}, {0, 0}, {1, 0}, "K1 - K2", 'K');
  auto rep = verify_main(spec, CharacterSpec<Rational>{{kSwap}, {Rational(-1)}});
  EXPECT_TRUE(rep.hypothesis_verified);
  EXPECT_TRUE(rep.membership);
  auto top = combination_of(rep).depth_part(2);
  EXPECT_EQ(top.coefficient({2, 3}), -top.coefficient({3, 2}));
  EXPECT_EQ(top.size(), top.is_zero() ? 0u : 2u);
  EXPECT_EQ(rep.digest.size(), 16u);
}

TEST(VerifyMain, FlipCharacterSingleSymbol) {
  // chi(eps) = eps_1^2 eps_2^3
  auto spec = make_spec({3, 3}, {0, 0}, {1, 0}, "K1", 'K');
  CharacterSpec<Rational> cs{{GroupElement::flips({-1, 1}), GroupElement::flips({1, -1})}, {Rational(1), Rational(-1)}};
  auto rep = verify_main(spec, cs);
  EXPECT_TRUE(rep.membership);
  const auto depth2 = combination_of(rep).depth_part(2);
  for (const auto &[s, v] : depth2.terms())
    EXPECT_EQ(s, (Composition{2, 3}));
}

TEST(VerifyMain, TrivialGroup) {
  auto spec = make_spec({2, 3}, {1, 0}, {2, 0}, "k1 + 3");
  auto rep = verify_main(spec, CharacterSpec<Rational>{});
  EXPECT_TRUE(rep.hypothesis_verified);
  EXPECT_TRUE(rep.membership);
}

TEST(VerifyMain, Errors) {
  auto bad = make_spec({3, 3}, {0, 0}, {1, 0}, "K1", 'K');
  EXPECT_EQ(kind_of([&] { verify_main(bad, CharacterSpec<Rational>{{kSwap}, {Rational(-1)}}); }),
            "HypothesisFails");
  auto mixed = make_spec({3, 2}, {0, 0}, {1, 0}, "1");
  EXPECT_EQ(kind_of([&] { verify_main(mixed, CharacterSpec<Rational>{{kSwap}, {Rational(1)}}); }),
            "FamilyNotClosed");
}

TEST(VerifyMain, RandomAntisymmetricCorpus) {
  std::mt19937 rng(17);
  int done = 0;
  for (int attempt = 0; done < 24 && attempt < 500; ++attempt) {
    const int n = std::uniform_int_distribution<int>(0, 2)(rng);
    const int r = std::uniform_int_distribution<int>(0, n + 2)(rng);
    const int bound = 3 * (n + 1) - 2;
    SeriesSpec<Rational> spec;
    spec.p = 2;
    spec.A = {3, 3};
    spec.n = {n, n};
    spec.r = {r, 0};
    auto M = random_numerator(rng, {bound, bound}, 3);
    auto PK = M - M.substitute_signed_permutation({1, 1}, {1, 0});
    if (PK.is_zero())
      continue;
    spec.P = change_frame(PK, spec.K_frame(), spec.k_frame());
    auto an = analyze(spec);
    if (!an.convergent || !an.degree_ok)
      continue;
    ++done;
    auto rep = verify_main(spec, CharacterSpec<Rational>{{kSwap}, {Rational(-1)}});
    ASSERT_TRUE(rep.membership);
    auto x = combination_of(rep);
    auto top = x.depth_part(2);
    for (const auto &[s, v] : top.terms())
      EXPECT_TRUE(s == (Composition{2, 3}) || s == (Composition{3, 2}));
    EXPECT_EQ(top.coefficient({2, 3}), -top.coefficient({3, 2}));
    auto check = check_decomposition(spec, x, 1e-8);
    EXPECT_TRUE(check.pass) << "residual " << check.residual;
  }
  EXPECT_GE(done, 20);
}

TEST(VerifyParity, SingleVariableOddSupport) {
  // (k+1)^2 / (k)_3^3: even in K = k + 1, A(n+1) = 9, so e = 1
  auto spec = make_spec({3}, {2}, {0}, "(k1 + 1)^2");
  auto rep = verify_parity(spec, {1});
  EXPECT_TRUE(rep.membership);
  const auto depth1 = combination_of(rep).depth_part(1);
  for (const auto &[s, v] : depth1.terms())
    EXPECT_EQ(s[0] % 2, 1);
  EXPECT_FALSE(combination_of(rep).depth_part(1).is_zero());
}

TEST(VerifyParity, PairParities) {
  auto spec = make_spec({3, 3}, {0, 0}, {1, 0}, "K1", 'K');
  auto rep = verify_parity(spec, {0, 1});
  EXPECT_TRUE(rep.membership);
  const auto depth2 = combination_of(rep).depth_part(2);
  for (const auto &[s, v] : depth2.terms())
    EXPECT_EQ(s, (Composition{2, 3}));
  // Only the first condition: a subset of indices is allowed.
  EXPECT_TRUE(verify_parity(spec, {0, std::nullopt}).membership);
}

TEST(VerifyParity, ViolationThrows) {
  auto spec = make_spec({3, 3}, {0, 0}, {1, 0}, "K1 + K2", 'K');
  EXPECT_EQ(kind_of([&] { verify_parity(spec, {0, 1}); }), "HypothesisFails");
  EXPECT_EQ(kind_of([&] { verify_parity(spec, {0}); }), "SizeMismatch");
}

TEST(VerifyParity, RandomSymmetricCorpus) {
  std::mt19937 rng(23);
  int done = 0, nonzero = 0;
  for (int attempt = 0; done < 30 && attempt < 2000; ++attempt) {
    SeriesSpec<Rational> spec;
    spec.p = std::uniform_int_distribution<int>(2, 3)(rng);
    std::vector<int> deg, e;
    std::vector<std::optional<int>> eopt;
    for (int i = 0; i < spec.p; ++i) {
      const int n = std::uniform_int_distribution<int>(0, 1)(rng);
      spec.A.push_back(3);
      spec.n.push_back(n);
      spec.r.push_back(std::uniform_int_distribution<int>(0, 3)(rng));
      deg.push_back(3 * (n + 1) - 2);
    }
    // The K-parity of P in variable i is A(n_i+1) + e_i.
    for (int i = 0; i < spec.p; ++i) {
      const int ei = std::uniform_int_distribution<int>(0, 1)(rng);
      eopt.push_back(ei);
      e.push_back((3 * (spec.n[static_cast<std::size_t>(i)] + 1) + ei) % 2);
    }
    auto PK = random_parity_poly(rng, deg, e);
    if (PK.is_zero())
      continue;
    spec.P = change_frame(PK, spec.K_frame(), spec.k_frame());
    auto an = analyze(spec);
    if (!an.convergent || !an.degree_ok)
      continue;
    ++done;
    auto rep = verify_parity(spec, eopt);
    EXPECT_TRUE(rep.membership) << rep.notes.back();
    auto top = combination_of(rep).depth_part(spec.p);
    EXPECT_LE(top.size(), 1u);
    nonzero += top.size() == 1;
  }
  EXPECT_GE(done, 20);
  EXPECT_GE(nonzero, done / 2);
}

TEST(VerifyPair, WorkedValue) {
  auto rep = verify_pair(3, 1, 2, 1, 1);
  EXPECT_TRUE(rep.membership);
  QComb expected;
  expected.add({}, Rational(-43, 16));
  expected.add({2}, Rational(2));
  expected.add({3}, Rational(-1, 2));
  EXPECT_EQ(combination_of(rep), expected);
}

TEST(VerifyPair, CaseTable) {
  for (int r : {0, 1, 2, 3})
    for (int e = 0; e <= 1; ++e)
      for (int f = 0; f <= 1; ++f) {
        auto rep = verify_pair(3, 1, r, e, f);
        EXPECT_TRUE(rep.hypothesis_verified);
        EXPECT_TRUE(rep.membership) << rep.label;
        auto x = combination_of(rep);
        const int S = r >= 2 ? 3 : 6;
        const auto depth1 = x.depth_part(1);
        for (const auto &[s, v] : depth1.terms())
          EXPECT_LE(s[0], S) << rep.label;
        const auto depth2 = x.depth_part(2);
        for (const auto &[s, v] : depth2.terms()) {
          EXPECT_EQ((s[0] + s[1] - e - f) % 2, 0);
          EXPECT_EQ(x.coefficient({s[1], s[0]}), f ? -v : v);
        }
      }
}

TEST(VerifyPair, HigherExponents) {
  for (int n = 0; n <= 2; ++n)
    for (int e = 0; e <= 3 * (n + 1) - 2; ++e)
      for (int f = 0; e + f <= 3 * (n + 1) - 2; ++f)
        EXPECT_TRUE(verify_pair(3, n, n + 1, e, f).membership) << n << " " << e << " " << f;
  EXPECT_EQ(kind_of([] { verify_pair(3, 0, 1, 1, 1); }), "InvalidArgument");
}

TEST(VerifyCyclic, PairReducesToAntisymmetric) {
  auto spec = make_spec({3, 3}, {0, 0}, {1, 0}, "K1 - K2", 'K');
  auto rep = verify_cyclic(spec, Rational(-1));
  EXPECT_TRUE(rep.membership);
  auto top = combination_of(rep).depth_part(2);
  EXPECT_EQ(top.coefficient({2, 3}), -top.coefficient({3, 2}));
}

TEST(VerifyCyclic, ThreeVariablesOverCubicField) {
  const Field f{3};
  const Cyclotomic xi = Cyclotomic::zeta(3);
  SeriesSpec<Cyclotomic> spec;
  spec.p = 3;
  spec.A = {3, 3, 3};
  spec.n = {0, 0, 0};
  spec.r = {2, 1, 0};
  spec.field = f;
  // Q = M + xi^-1 T M + xi^-2 T^2 M with (T P)(K1, K2, K3) = P(K2, K3, K1).
  using CPoly = MultiPoly<Cyclotomic>;
  auto K = [](int i) { return CPoly::variable(3, i); };
  const Cyclotomic xinv = Cyclotomic(Rational(1)) / xi;
  CPoly Q = K(0) + K(1).scaled(xinv) + K(2).scaled(xinv * xinv);
  spec.P = change_frame(Q, spec.K_frame(), spec.k_frame());
  auto rep = verify_cyclic(spec, xi);
  EXPECT_TRUE(rep.hypothesis_verified);
  EXPECT_TRUE(rep.membership);
  auto x = decompose(spec).depth_part(3);
  EXPECT_FALSE(x.is_zero());
  for (const auto &[s, v] : x.terms()) {
    Composition t{s[1], s[2], s[0]};
    EXPECT_EQ(x.coefficient(t), xi * v);
  }
  // xi = 1 with a rotation-invariant numerator.
  spec.P = change_frame(K(0) + K(1) + K(2), spec.K_frame(), spec.k_frame());
  EXPECT_TRUE(verify_cyclic(spec, Cyclotomic(Rational(1))).membership);
}

TEST(VerifyCyclic, Errors) {
  auto spec = make_spec<Cyclotomic>({3, 3, 3}, {0, 0, 0}, {2, 1, 0}, "1");
  EXPECT_EQ(kind_of([&] { verify_cyclic(spec, Cyclotomic::zeta(3)); }), "UnsupportedField");
  EXPECT_EQ(kind_of([&] { verify_cyclic(spec, Cyclotomic(Rational(2))); }), "InvalidArgument");
  auto pair = make_spec({3, 3}, {0, 0}, {1, 0}, "K1 + K2", 'K');
  EXPECT_EQ(kind_of([&] { verify_cyclic(pair, Rational(-1)); }), "HypothesisFails");
}

TEST(Scan, TheoremFamiliesSmallN) {
  for (int n = 0; n <= 1; ++n)
    for (int family = 1; family <= 4; ++family) {
      int ran = 0;
      for (const auto &rep : scan_theorem41(n, family)) {
        EXPECT_TRUE(rep.pass()) << rep.label;
        if (rep.skipped)
          continue;
        ++ran;
        EXPECT_EQ(rep.coeff_22, "0") << rep.label;
        EXPECT_EQ(rep.coeff_222, "0") << rep.label;
        EXPECT_FALSE(rep.soft_finding);
      }
      EXPECT_GT(ran, 0) << n << " " << family;
    }
}

TEST(Scan, FamilyOneCounts) {
  EXPECT_EQ(scan_theorem41(0, 1).size(), 2u);
  EXPECT_EQ(scan_theorem41(1, 1).size(), 20u);
  EXPECT_EQ(kind_of([] { scan_theorem41(0, 5); }), "InvalidArgument");
  EXPECT_EQ(kind_of([] { scan_theorem41(4, 1); }), "InvalidArgument");
}

TEST(Scan, DeterministicAcrossJobs) {
  auto a = scan_theorem41(1, 3, {1});
  auto b = scan_theorem41(1, 3, {3});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_EQ(a[i].digest, b[i].digest);
  }
}

TEST(Scan, ConjectureSmallN) {
  auto reps = scan_conjecture18(0);
  ASSERT_FALSE(reps.empty());
  for (const auto &rep : reps) {
    EXPECT_TRUE(rep.pass()) << rep.label;
    if (rep.skipped)
      continue;
    EXPECT_EQ(rep.coeff_22, "0") << rep.label;
    for (const auto &[s, v] : rep.combination)
      if (s.size() == 3)
        EXPECT_EQ(s, (Composition{2, 3, 2}));
  }
}

TEST(Scan, DegenerateNumerator) {
  auto rep = detail::scan_instance("1.8", 0, {"zero", MultiPoly<Rational>(3)}, {}, {}, Composition{2, 3, 2});
  EXPECT_TRUE(rep.pass());
  EXPECT_TRUE(rep.combination.empty());
}
