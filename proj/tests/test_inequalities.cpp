#include <gtest/gtest.h>

#include <numbers>

#include "chsh/errors.hpp"
#include "chsh/inequalities.hpp"
#include "support/generators.hpp"

using namespace chsh;
using chsh::testing::brute_moment;
using chsh::testing::Gen;

namespace {
constexpr double kPi = std::numbers::pi;
const AngleSet kExample(-kPi / 3, 0.0, kPi / 3, 2 * kPi / 3);
}  // namespace

TEST(Names, RoundTrip) {
  for (auto k : {InequalityKind::kChsh, InequalityKind::kBell, InequalityKind::kBellChsh, InequalityKind::kBasic,
                 InequalityKind::kWignerProb, InequalityKind::kChshConditional})
    EXPECT_EQ(parse_inequality_kind(to_string(k)), k);
  EXPECT_EQ(parse_sign_pattern("pmpp"), SignPattern::kPlusMinusPlusPlus);
  EXPECT_EQ(parse_sign_pattern("mppp"), SignPattern::kMinusPlusPlusPlus);
  EXPECT_THROW(parse_inequality_kind("chsh2"), InvalidInput);
  EXPECT_THROW(parse_sign_pattern("pppp"), InvalidInput);
}

TEST(ChshCombination, Examples) {
  EXPECT_DOUBLE_EQ(chsh_combination({-0.5, 1, -0.5, -0.5}), -2.5);
  EXPECT_DOUBLE_EQ(chsh_combination({1, 1, 1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(chsh_combination({0, 0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(chsh_combination({-0.5, 1, -0.5, -0.5}, SignPattern::kMinusPlusPlusPlus), 0.5);
}

TEST(ChshFirstMember, WorkedExample) {
  const auto r = chsh_first_member(kExample, SignPattern::kPlusMinusPlusPlus);
  EXPECT_NEAR(r.first_member, -0.5, 1e-12);
  EXPECT_TRUE(r.violated);
  const auto eq = chsh_first_member(AngleSet(0.4, 0.4, 0.4, 0.4));
  EXPECT_NEAR(eq.first_member, 0.0, 1e-15);
  EXPECT_FALSE(eq.violated);
}

TEST(ChshFirstMember, PatternsAgreeUpToRelabeling) {
  const AngleSet a(0, kPi / 16, kPi / 16, kPi / 16);
  const double direct = 2 - std::fabs(-std::cos(2 * a.difference(1, 3)) + std::cos(2 * a.difference(1, 4)) +
                                      std::cos(2 * a.difference(2, 3)) + std::cos(2 * a.difference(2, 4)));
  EXPECT_NEAR(chsh_first_member(a).first_member, direct, 1e-12);
  Gen g(301);
  for (int i = 0; i < 1000; ++i) {
    const AngleSet b = g.angles();
    ASSERT_NEAR(chsh_first_member(b, SignPattern::kMinusPlusPlusPlus).first_member,
                chsh_first_member(b.swapped_second_arm(), SignPattern::kPlusMinusPlusPlus).first_member, 1e-12);
  }
}

TEST(ViolationThreshold, StrictBeyondTolerance) {
  EXPECT_FALSE(InequalityReport::make(InequalityKind::kChsh, -1e-13).violated);
  EXPECT_FALSE(InequalityReport::make(InequalityKind::kChsh, 0.0).violated);
  EXPECT_TRUE(InequalityReport::make(InequalityKind::kChsh, -2e-12).violated);
}

TEST(BasicInequality, Examples) {
  Distribution<2> corr;
  corr.mass = {0.5, 0, 0, 0.5};
  const auto [a, b] = basic_inequality_margins(corr, 1, 2);
  EXPECT_DOUBLE_EQ(a, 0.0);
  EXPECT_DOUBLE_EQ(b, 2.0);

  for (double t : {0.0, 0.3, kPi / 2, 2 * kPi / 3, 2.9}) {
    const auto d = pair_distribution(t);
    Distribution<2> law;
    law.mass = d.as_array();
    const auto [m1, m2] = basic_inequality_margins(law, 1, 2);
    EXPECT_NEAR(m1, 1 - std::cos(2 * t), 1e-12);
    EXPECT_NEAR(m2, 1 + std::cos(2 * t), 1e-12);
  }

  Distribution<2> bad;
  bad.mass = {0.5, 0.5, 0.5, 0};
  EXPECT_THROW(basic_inequality_margins(bad, 1, 2), InvalidInput);
  bad.mass = {1.2, -0.2, 0, 0};
  EXPECT_THROW(basic_inequality_margins(bad, 1, 2), InvalidInput);
  EXPECT_THROW(basic_inequality_margins(corr, 1, 1), InvalidInput);
}

TEST(BellInequality, Examples) {
  Distribution<3> uniform;
  uniform.mass.fill(1.0 / 8);
  EXPECT_NEAR(bell_first_member(uniform, 1, 2, 3), 1.0, 1e-15);
  Distribution<3> point;
  point.mass[7] = 1.0;
  EXPECT_DOUBLE_EQ(bell_first_member(point, 1, 2, 3), 0.0);
  EXPECT_THROW(bell_first_member(point, 1, 1, 3), InvalidInput);
}

// Oracle: brute-force 8-outcome sums, independent of Distribution::moment.
TEST(BasicInequalityProperty, RandomGenuineDistributions) {
  Gen g(302);
  for (int i = 0; i < 10000; ++i) {
    const auto d = g.distribution<3>();
    for (auto [j, k] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
      const double ejk = brute_moment(d.mass, 3, {j, k});
      const double ej = brute_moment(d.mass, 3, {j});
      const double ek = brute_moment(d.mass, 3, {k});
      const auto [m1, m2] = basic_inequality_margins(d, j, k);
      ASSERT_NEAR(m1, (1 - ejk) - std::fabs(ej - ek), 1e-12) << "case " << i;
      ASSERT_NEAR(m2, (1 + ejk) - std::fabs(ej + ek), 1e-12) << "case " << i;
      ASSERT_GE(m1, -1e-12) << "case " << i;
      ASSERT_GE(m2, -1e-12) << "case " << i;
    }
    const double bell = bell_first_member(d, 1, 2, 3);
    ASSERT_NEAR(bell, (1 - brute_moment(d.mass, 3, {1, 3})) -
                          std::fabs(brute_moment(d.mass, 3, {1, 2}) - brute_moment(d.mass, 3, {2, 3})),
                1e-12);
    ASSERT_GE(bell, -1e-12) << "case " << i;
  }
}

TEST(BasicInequalityProperty, PairLawNeverViolates) {
  Gen g(303);
  for (int i = 0; i < 10000; ++i) {
    const auto r = evaluate(InequalityKind::kBasic, g.angles(), SignPattern::kMinusPlusPlusPlus);
    ASSERT_GE(r.first_member, -1e-12);
  }
}

TEST(BellChsh, Examples) {
  EXPECT_DOUBLE_EQ(bell_chsh_first_member({-0.5, 1, -0.5, -0.5}), -0.5);
  EXPECT_DOUBLE_EQ(bell_chsh_first_member({1, 1, 1, 1}), 0.0);
}

TEST(BellChshProperty, TriangleImplication) {
  Gen g(304);
  for (int i = 0; i < 10000; ++i) {
    const auto e = g.quad();
    const double chsh = 2 - std::fabs(chsh_combination(e));
    const double bc = bell_chsh_first_member(e);
    ASSERT_LE(bc, chsh + 1e-15) << "case " << i;
    if (chsh <= 0) ASSERT_LE(bc, 0.0);
  }
}

TEST(Wigner, WorkedExample) {
  const auto w = wigner_decomposition(kExample);
  EXPECT_NEAR(w.half1, 0.0, 1e-12);
  EXPECT_NEAR(w.half2, -0.25, 1e-12);
  EXPECT_NEAR(w.sum, -0.25, 1e-12);
  EXPECT_NEAR(w.chsh_identity, -2.5 / 2 + 1, 1e-12);
  const auto same = wigner_decomposition(AngleSet(1, 1, 1, 1));
  // P13(C) + P14(C') - P34(C) = 1 + 0 - 1 and P34(C) - P23(C') + P24(C) = 1 - 0 + 1
  EXPECT_NEAR(same.half1, 0.0, 1e-15);
  EXPECT_NEAR(same.half2, 2.0, 1e-15);
  EXPECT_NEAR(same.sum, 2.0, 1e-15);
  const auto r = evaluate(InequalityKind::kWignerProb, kExample, SignPattern::kPlusMinusPlusPlus);
  EXPECT_NEAR(r.first_member, -0.25, 1e-12);
  EXPECT_TRUE(r.violated);
}

TEST(WignerProperty, IdentityWithChsh) {
  Gen g(305);
  for (int i = 0; i < 10000; ++i) {
    const auto a = g.angles();
    const auto w = wigner_decomposition(a);
    ASSERT_NEAR(w.sum, chsh_combination(expectation_quad(a)) / 2 + 1, 1e-12) << "case " << i;
    ASSERT_NEAR(w.sum, w.chsh_identity, 1e-12);
  }
}

TEST(ExpectationQuadProperty, InRange) {
  Gen g(306);
  for (int i = 0; i < 10000; ++i) {
    const auto e = expectation_quad(g.angles());
    for (double x : {e.e13, e.e14, e.e23, e.e24}) {
      ASSERT_GE(x, -1 - 1e-12);
      ASSERT_LE(x, 1 + 1e-12);
    }
  }
}

TEST(Evaluate, KindsAtWorkedExample) {
  const auto bell = evaluate(InequalityKind::kBell, kExample, SignPattern::kPlusMinusPlusPlus);
  // 1 - cos(2*pi/3) - |cos(4pi/3) - cos(2pi)| = 3/2 - 3/2
  EXPECT_NEAR(bell.first_member, 0.0, 1e-12);
  const auto bc = evaluate(InequalityKind::kBellChsh, kExample, SignPattern::kPlusMinusPlusPlus);
  EXPECT_NEAR(bc.first_member, -0.5, 1e-12);
  const auto cond = evaluate(InequalityKind::kChshConditional, kExample, SignPattern::kPlusMinusPlusPlus);
  EXPECT_NEAR(cond.first_member, 11.0 / 8, 1e-12);
  const auto basic = evaluate(InequalityKind::kBasic, kExample, SignPattern::kPlusMinusPlusPlus);
  EXPECT_NEAR(basic.first_member, 0.0, 1e-12);
}

TEST(Scan, GridShapeAndOrdering) {
  const auto grid = ScanGrid::standard();
  EXPECT_EQ(grid.size(), 343u);
  const auto entries = scan(grid, InequalityKind::kChsh, SignPattern::kMinusPlusPlusPlus, 3);
  ASSERT_EQ(entries.size(), 343u);
  EXPECT_DOUBLE_EQ(entries[0].angles.theta(4), kPi / 16);
  EXPECT_DOUBLE_EQ(entries[1].angles.theta(4), 2 * kPi / 16);
  EXPECT_DOUBLE_EQ(entries[7].angles.theta(3), 2 * kPi / 16);
  EXPECT_DOUBLE_EQ(entries[49].angles.theta(2), 2 * kPi / 16);
  const auto serial = scan(grid, InequalityKind::kChsh, SignPattern::kMinusPlusPlusPlus, 1);
  for (std::size_t i = 0; i < entries.size(); ++i)
    EXPECT_EQ(entries[i].report.first_member, serial[i].report.first_member);

  const auto one = scan(ScanGrid::single(AngleSet(0, kPi / 16, kPi / 16, kPi / 16)), InequalityKind::kChsh,
                        SignPattern::kMinusPlusPlusPlus);
  EXPECT_EQ(one.size(), 1u);
}

// Regression value, cross-checked by a direct cosine loop.
TEST(Scan, ViolationCountOnDefaultGrid) {
  const auto entries = scan(ScanGrid::standard(), InequalityKind::kChsh, SignPattern::kMinusPlusPlusPlus);
  std::size_t lib = 0, direct = 0;
  for (const auto& e : entries) lib += e.report.violated;
  for (int b = 1; b <= 7; ++b)
    for (int c = 1; c <= 7; ++c)
      for (int d = 1; d <= 7; ++d) {
        const double t2 = b * kPi / 16, t3 = c * kPi / 16, t4 = d * kPi / 16;
        const double v = 2 - std::fabs(-std::cos(2 * t3) + std::cos(2 * t4) + std::cos(2 * (t3 - t2)) +
                                       std::cos(2 * (t4 - t2)));
        direct += v < -1e-12;
      }
  EXPECT_EQ(lib, direct);
  EXPECT_EQ(lib, 91u);
}

TEST(Scan, ConditionalKindNeverBelowOne) {
  for (const auto& e : scan(ScanGrid::standard(), InequalityKind::kChshConditional, SignPattern::kMinusPlusPlusPlus))
    EXPECT_GE(e.report.first_member, 1.0 - 1e-12);
}

TEST(ScanGrid, Validation) {
  ScanGrid g;
  EXPECT_THROW(g.validate(), InvalidInput);
  g = ScanGrid::standard();
  g.theta3.push_back(std::numeric_limits<double>::infinity());
  EXPECT_THROW(g.validate(), InvalidInput);
}
