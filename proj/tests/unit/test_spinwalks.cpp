#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spinlimit/errors.hpp"
#include "spinlimit/spinwalks.hpp"
#include "spinlimit/symbols.hpp"

using namespace spinlimit;

namespace {

constexpr double kPi = std::numbers::pi;
const AxisMonomial kXYXZ({Axis::X, Axis::Y, Axis::X, Axis::Z});

}  // namespace

TEST(SpinWalk, Validation) {
  EXPECT_THROW(SpinWalk({0}), ValidationError);
  EXPECT_THROW(SpinWalk({0, 1}), ValidationError);
  EXPECT_THROW(SpinWalk({0, 2, 0}), ValidationError);
  EXPECT_THROW(SpinWalk({0, -1, 0}), ValidationError);
  const SpinWalk w({0, 1, 1, 2, 1, 0, 0});
  EXPECT_EQ(w.length(), 6);
  EXPECT_EQ(w.max_level(), 2);
  EXPECT_EQ(w.steps(), (std::vector<int>{1, 0, 1, -1, -1, 0}));
  EXPECT_EQ(w.break_counts(), (std::map<int, int>{{0, 1}, {1, 1}}));
  EXPECT_EQ(w.pair_counts(), (std::map<int, int>{{0, 1}, {1, 1}}));
  int total = 0;
  for (const auto& [tau, b] : w.break_counts()) total += b;
  for (const auto& [sigma, t] : w.pair_counts()) total += 2 * t;
  EXPECT_EQ(total, w.length());
}

TEST(EnumerateWalks, LengthTwoAndCounts) {
  const auto w2 = enumerate_walks(2);
  ASSERT_EQ(w2.size(), 2u);
  EXPECT_EQ(w2[0].levels(), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(w2[1].levels(), (std::vector<int>{0, 1, 0}));
  const std::uint64_t table[10] = {1, 2, 4, 9, 21, 51, 127, 323, 835, 2188};
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(enumerate_walks(n).size(), table[n - 1]);
  for (int n = 1; n <= 14; ++n) EXPECT_EQ(enumerate_walks(n).size(), motzkin_number(n));
  EXPECT_THROW(enumerate_walks(0), ValidationError);
  EXPECT_THROW(enumerate_walks(15), ValidationError);
}

TEST(EnumerateWalks, BoundedAndLexicographic) {
  const auto w = enumerate_walks(4, 1);
  EXPECT_EQ(w.size(), 8u);
  for (const auto& x : w) EXPECT_NE(x.levels(), (std::vector<int>{0, 1, 2, 1, 0}));
  const auto all = enumerate_walks(7);
  for (std::size_t k = 1; k < all.size(); ++k) EXPECT_LT(all[k - 1].levels(), all[k].levels());
}

TEST(WalkWeight, Examples) {
  for (int two_s = 1; two_s <= 9; ++two_s) {
    EXPECT_EQ(walk_weight(SpinWalk({0, 0, 0, 0, 0}), two_s), 1);
    EXPECT_EQ(walk_weight(SpinWalk({0, 1, 0}), two_s), Rational(4, two_s));
  }
  for (int two_s = 2; two_s <= 9; ++two_s) {
    const Rational s(two_s, 2);
    EXPECT_EQ(walk_weight(SpinWalk({0, 1, 2, 1, 0}), two_s), 4 * (2 * s - 1) / (s * s * s));
  }
  EXPECT_THROW(walk_weight(SpinWalk({0, 1, 2, 1, 0}), 1), ValidationError);
}

TEST(WalkWeight, PolynomialAgreesWithRational) {
  for (int n = 1; n <= 8; ++n)
    for (const auto& w : enumerate_walks(n)) {
      const auto poly = walk_weight_polynomial(w);
      ASSERT_EQ(poly.size(), static_cast<std::size_t>(n) + 1);
      for (int two_s = 1; two_s <= 9; ++two_s) {
        const Rational u(2, two_s);
        Rational v = 0, p = 1;
        for (const auto& c : poly) {
          v += c * p;
          p *= u;
        }
        if (w.max_level() <= two_s) {
          EXPECT_EQ(v, walk_weight(w, two_s));
        } else {
          EXPECT_EQ(v, 0);
        }
      }
    }
}

TEST(WalkWeight, PositivityBelowS) {
  for (int two_s = 1; two_s <= 8; ++two_s)
    for (const auto& w : enumerate_walks(6, two_s)) {
      bool low = true;
      for (const auto& [tau, b] : w.break_counts()) low = low && (2 * tau < two_s);
      if (low) EXPECT_GT(walk_weight(w, two_s), 0);
    }
}

TEST(AxisMonomialParse, TokensAndErrors) {
  const AxisMonomial m = parse_axis_monomial("x y x z");
  EXPECT_EQ(m.axes(), kXYXZ.axes());
  EXPECT_EQ(m.str(), "x y x z");
  EXPECT_EQ(parse_axis_monomial(" 1  2 3").degree(), 3);
  try {
    parse_axis_monomial("x y q z");
    FAIL();
  } catch (const MonomialParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_axis_monomial("   "), MonomialParseError);
  EXPECT_THROW(parse_axis_monomial("xy"), MonomialParseError);
  EXPECT_TRUE(is_site_qualified("0x 1y"));
  EXPECT_FALSE(is_site_qualified("x y"));
  const auto sm = parse_site_monomial("0x 12z");
  EXPECT_EQ(sm.factors()[1].site, 12);
  EXPECT_EQ(sm.factors()[1].axis, Axis::Z);
  try {
    parse_site_monomial("0x 1w");
    FAIL();
  } catch (const MonomialParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(MonomialSymbolWalks, SquaredS3) {
  const AxisMonomial zz({Axis::Z, Axis::Z});
  for (int two_s : {1, 2, 3, 8}) {
    const double t = 0.77, s = 0.5 * two_s;
    const cplx g = monomial_symbol_walks(zz, t, 1.0, two_s);
    EXPECT_NEAR(std::abs(g - (std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t) / (2 * s))),
                0.0, 1e-14);
  }
  EXPECT_NEAR(std::abs(monomial_symbol_walks(AxisMonomial({Axis::Z}), 0.3, 0.0, 5) - std::cos(0.3)),
              0.0, 0.0);
}

TEST(MonomialSymbolWalks, AgreesWithDirect) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> ts(1, 9), deg(1, 6), ax(1, 3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ph(0.0, 2 * kPi);
  for (int k = 0; k < 50; ++k) {
    const int two_s = ts(rng);
    std::vector<Axis> axes(static_cast<std::size_t>(deg(rng)));
    for (auto& a : axes) a = static_cast<Axis>(ax(rng));
    const AxisMonomial m(axes);
    const double t = std::acos(u(rng)), p = ph(rng);
    const cplx walks = monomial_symbol_walks(m, t, p, two_s);
    const cplx direct = monomial_symbol_direct(m.on_site(), PhasePoint::single(t, p), SpinRep(two_s));
    EXPECT_LE(std::abs(walks - direct), 1e-12);
  }
}

TEST(SemiclassicalCorrections, WorkedExample) {
  const double t = 1.0, p = 0.6;
  const Vec3 x = to_cartesian({t, p});
  for (int two_s : {2, 10}) {
    const double s = 0.5 * two_s;
    const auto c = semiclassical_corrections(kXYXZ, t, p, two_s);
    EXPECT_NEAR(std::abs(c.c1 - (-3.0 * x[0] * x[0] * x[1] * x[2] / s)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c.c2 - x[1] * x[2] / (2 * s)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c.c3 - cplx(0.0, x[0] * (x[0] * x[0] - 2 * x[1] * x[1]) / (2 * s))), 0.0,
                1e-15);
  }
}

TEST(LaurentCoefficients, LeadingTermAndSingleFactor) {
  const double t = 0.9, p = 2.0;
  const auto c = laurent_coefficients(kXYXZ, t, p, {1, 2, 3, 4, 5, 6});
  ASSERT_EQ(c.size(), 5u);
  EXPECT_NEAR(std::abs(c[0] - kXYXZ.classical(t, p)), 0.0, 1e-11);
  const auto exact = laurent_coefficients_exact(kXYXZ, t, p);
  for (std::size_t k = 0; k < c.size(); ++k) EXPECT_NEAR(std::abs(c[k] - exact[k]), 0.0, 1e-9);
  const auto corr = semiclassical_corrections(kXYXZ, t, p, 2);
  EXPECT_NEAR(std::abs(exact[1] - corr.total()), 0.0, 1e-14);

  const auto z = laurent_coefficients(AxisMonomial({Axis::Z}), t, p, {1, 2, 7});
  EXPECT_NEAR(std::abs(z[0] - std::cos(t)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(z[1]), 0.0, 1e-14);
  EXPECT_THROW(laurent_coefficients(kXYXZ, t, p, {1, 2, 2, 3, 4}), ValidationError);
}
