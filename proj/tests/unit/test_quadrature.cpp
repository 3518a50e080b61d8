#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spinlimit/quadrature.hpp"

using namespace spinlimit;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Exact average of x^a y^b z^c over the unit sphere.
double sphere_moment(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0.0;
  const auto df = [](int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
  };
  return df(a - 1) * df(b - 1) * df(c - 1) / df(a + b + c + 1);
}

double monomial(const PhasePoint& p, int a, int b, int c) {
  const Vec3& x = p.cartesian(0);
  return std::pow(x[0], a) * std::pow(x[1], b) * std::pow(x[2], c);
}

}  // namespace

TEST(SphereRule, NodeCountsAndWeights) {
  for (int L : {0, 1, 2, 7, 20, 41}) {
    const SphereRule r(L);
    EXPECT_EQ(r.n_theta(), (L + 2) / 2);
    EXPECT_EQ(r.n_phi(), L + 1);
    EXPECT_EQ(r.nodes().size(), static_cast<std::size_t>(r.n_theta() * r.n_phi()));
    EXPECT_NEAR(r.weight_sum(), kFourPi, 1e-12);
    for (const auto& n : r.nodes()) EXPECT_GT(n.weight, 0.0);
  }
}

TEST(SphereRule, StandardMoments) {
  const auto z2 = integrate(SphereRule(2), [](const PhasePoint& p) {
    return cplx(monomial(p, 0, 0, 2), 0.0);
  });
  EXPECT_NEAR(z2.real() / kFourPi, 1.0 / 3.0, 1e-15);
  const auto z1 = integrate(SphereRule(1), [](const PhasePoint& p) {
    return cplx(monomial(p, 0, 0, 1), 0.0);
  });
  EXPECT_NEAR(std::abs(z1), 0.0, 1e-15);
  const auto x2y2 = integrate(SphereRule(4), [](const PhasePoint& p) {
    return cplx(monomial(p, 2, 2, 0), 0.0);
  });
  EXPECT_NEAR(x2y2.real() / kFourPi, 1.0 / 15.0, 1e-15);
}

TEST(SphereRule, ExactForAllMonomialsUpToDegree) {
  for (int L : {3, 6, 10}) {
    const SphereRule rule(L);
    for (int a = 0; a <= L; ++a)
      for (int b = 0; a + b <= L; ++b)
        for (int c = 0; a + b + c <= L; ++c) {
          const cplx v = integrate(rule, [&](const PhasePoint& p) {
            return cplx(monomial(p, a, b, c), 0.0);
          });
          EXPECT_NEAR(v.real() / kFourPi, sphere_moment(a, b, c), 1e-13)
              << "L=" << L << " a=" << a << " b=" << b << " c=" << c;
        }
  }
}

TEST(ProductGrid, ConstantsAndOddProducts) {
  const auto one = [](const PhasePoint&) { return cplx(1.0, 0.0); };
  EXPECT_NEAR(std::abs(integrate(ProductGrid(SphereRule(3), 1), one) - kFourPi), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(integrate(ProductGrid(SphereRule(3), 2), one) - kFourPi * kFourPi), 0.0,
              1e-12);
  const ProductGrid g(SphereRule(4), 2);
  EXPECT_EQ(g.size(), SphereRule(4).nodes().size() * SphereRule(4).nodes().size());
  const auto zz = integrate(g, [](const PhasePoint& p) {
    return cplx(p.cartesian(0)[2] * p.cartesian(1)[2], 0.0);
  });
  EXPECT_NEAR(std::abs(zz), 0.0, 1e-12);
}

TEST(ProductGrid, StreamsThreeSites) {
  const ProductGrid g(SphereRule(2), 3);
  std::size_t count = 0;
  g.for_each([&](const PhasePoint& p, double) {
    EXPECT_EQ(p.n_sites(), 3u);
    ++count;
  });
  EXPECT_EQ(count, g.size());
}

TEST(PairwiseSum, MatchesKahanOnLongSeries) {
  PairwiseSum<double> s;
  for (int k = 0; k < 100000; ++k) s.add(0.1);
  EXPECT_NEAR(s.result(), 10000.0, 1e-9);
}

TEST(MonteCarlo, ConstantIsExact) {
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    const auto e = mc_sphere(2, 1000, seed, [](const PhasePoint&) { return cplx(1.0, 0.0); });
    EXPECT_EQ(e.value.real(), kFourPi * kFourPi);
    EXPECT_EQ(e.std_error, 0.0);
  }
}

TEST(MonteCarlo, SecondMomentWithinFiveSigma) {
  const auto e = mc_sphere(1, 1000000, 42, [](const PhasePoint& p) {
    return cplx(p.cartesian(0)[2] * p.cartesian(0)[2], 0.0);
  });
  EXPECT_GT(e.std_error, 0.0);
  EXPECT_LE(std::abs(e.value.real() - kFourPi / 3.0), 5.0 * e.std_error);
}

TEST(MonteCarlo, SameSeedIsBitwiseIdentical) {
  const auto f = [](const PhasePoint& p) { return cplx(std::exp(p.cartesian(0)[0]), 0.0); };
  const auto a = mc_sphere(3, 5000, 123, f);
  const auto b = mc_sphere(3, 5000, 123, f);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  const McSphereSampler sampler(3, 5000, 123);
  EXPECT_DOUBLE_EQ(sampler.sample_weight(), std::pow(kFourPi, 3) / 5000.0);
}
