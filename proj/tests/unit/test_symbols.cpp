#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spinlimit/errors.hpp"
#include "spinlimit/gibbs.hpp"
#include "spinlimit/symbols.hpp"

using namespace spinlimit;

namespace {

constexpr double kPi = std::numbers::pi;

PhasePoint random_point(std::mt19937_64& rng, int n_sites) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), p(0.0, 2 * kPi);
  std::vector<SphereAngles> a;
  for (int k = 0; k < n_sites; ++k) a.push_back({std::acos(u(rng)), p(rng)});
  return PhasePoint(a);
}

Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd;
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = cplx(nd(rng), nd(rng));
  return 0.5 * (a + a.adjoint());
}

Matrix random_state(std::mt19937_64& rng, Eigen::Index n, int rank) {
  std::normal_distribution<double> nd;
  Matrix b(n, rank);
  for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = cplx(nd(rng), nd(rng));
  Matrix w = b * b.adjoint();
  w /= w.trace().real();
  return 0.5 * (w + w.adjoint());
}

cplx z_of(const PhasePoint& p) { return {p.cartesian(0)[2], 0.0}; }

}  // namespace

TEST(CovariantSymbol, IdentityAndSpin) {
  const SpinRep rep(3, 2);
  const PhasePoint p({{0.8, 0.3}, {2.1, 4.0}});
  EXPECT_NEAR(std::abs(covariant_symbol(Operator::identity(rep.dim()), p, rep) - 1.0), 0.0, 1e-14);
  const auto sm = make_spin_matrices(rep.single_site());
  const Operator z1 = embed_site(sm.s3, 1, rep);
  EXPECT_NEAR(std::abs(covariant_symbol(z1, p, rep) - rep.s() * std::cos(2.1)), 0.0, 1e-13);
  EXPECT_THROW(covariant_symbol(Operator::identity(3), p, rep), ValidationError);
}

TEST(CovariantSymbol, SquaredS3) {
  for (int two_s : {1, 2, 3}) {
    const SpinRep rep(two_s);
    const auto sm = make_spin_matrices(rep);
    const double s = rep.s();
    const Operator sq(sm.s3.matrix() * sm.s3.matrix() / (s * s), true);
    const double t = 1.234;
    const cplx g = covariant_symbol(sq, PhasePoint::single(t, 0.5), rep);
    const double expect = std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t) / (2 * s);
    EXPECT_NEAR(std::abs(g - expect), 0.0, 1e-14);
    EXPECT_LE(std::abs(g.imag()), 1e-13);
  }
}

TEST(MonomialSymbolDirect, DegreeOneIsExact) {
  std::mt19937_64 rng(4);
  const SpinRep rep(5, 2);
  for (int k = 0; k < 10; ++k) {
    const PhasePoint p = random_point(rng, 2);
    for (int site = 0; site < 2; ++site)
      for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        const cplx g = monomial_symbol_direct(MultiIndexMonomial({{site, a}}), p, rep);
        EXPECT_NEAR(std::abs(g - p.component(site, a)), 0.0, 1e-14);
      }
  }
}

TEST(MonomialSymbolDirect, ProductBound) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> ts(1, 9), deg(1, 6), ax(1, 3);
  for (int k = 0; k < 100; ++k) {
    const int two_s = ts(rng);
    const SpinRep rep(two_s);
    const int p = deg(rng);
    std::vector<SiteAxis> f;
    for (int j = 0; j < p; ++j) f.push_back({0, static_cast<Axis>(ax(rng))});
    const MultiIndexMonomial m(f);
    const PhasePoint pt = random_point(rng, 1);
    const double diff = std::abs(monomial_symbol_direct(m, pt, rep) - m.classical(pt));
    EXPECT_LE(diff, p / std::sqrt(2.0 * rep.s()));
  }
}

TEST(MonomialSymbolDirect, FactorizesAcrossSites) {
  const SpinRep rep(3, 2);
  const PhasePoint p({{0.6, 1.0}, {2.4, 0.2}});
  const MultiIndexMonomial m({{0, Axis::X}, {1, Axis::Y}, {0, Axis::Z}, {1, Axis::Y}});
  const cplx joint = monomial_symbol_direct(m, p, rep);
  const SpinRep one = rep.single_site();
  const cplx a = monomial_symbol_direct(MultiIndexMonomial({{0, Axis::X}, {0, Axis::Z}}),
                                        PhasePoint::single(0.6, 1.0), one);
  const cplx b = monomial_symbol_direct(MultiIndexMonomial({{0, Axis::Y}, {0, Axis::Y}}),
                                        PhasePoint::single(2.4, 0.2), one);
  EXPECT_NEAR(std::abs(joint - a * b), 0.0, 1e-12);
  const cplx dense = covariant_symbol(monomial_operator(m, rep), p, rep);
  EXPECT_NEAR(std::abs(joint - dense), 0.0, 1e-13);
}

TEST(ContravariantMatrix, OneZAndZSquared) {
  const SpinRep half(1);
  const Operator one = contravariant_matrix({[](const PhasePoint&) { return cplx(1.0); }, 0, {}},
                                            half);
  EXPECT_TRUE(one.hermitian());
  EXPECT_LE(max_entry_norm(one.matrix() - Matrix::Identity(2, 2)), 1e-12);

  const Operator az = contravariant_matrix({z_of, 1, {}}, half);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 1.0 / 3.0;
  expect(1, 1) = -1.0 / 3.0;
  EXPECT_LE(max_entry_norm(az.matrix() - expect), 1e-14);

  const Operator azz = contravariant_matrix(
      {[](const PhasePoint& p) { return cplx(std::pow(p.cartesian(0)[2], 2)); }, 2, {}}, half);
  const auto sm = make_spin_matrices(half);
  const Matrix target =
      sm.s3.matrix() * sm.s3.matrix() / 3.0 + 0.25 * Matrix::Identity(2, 2);
  EXPECT_LE(max_entry_norm(azz.matrix() - target), 1e-14);
}

TEST(ContravariantMatrix, RefusesLowDegree) {
  const SpinRep rep(4);
  EXPECT_THROW(contravariant_matrix({z_of, 1, 8}, rep), ValidationError);
  EXPECT_NO_THROW(contravariant_matrix({z_of, 1, 9}, rep));
  EXPECT_EQ(required_degree(rep, 1), 9);
}

TEST(ContravariantMatrix, ComplexInputIsNotFlagged) {
  const SpinRep rep(2);
  const Operator a = contravariant_matrix(
      {[](const PhasePoint& p) { return cplx(p.cartesian(0)[0], p.cartesian(0)[1]); }, 1, {}}, rep);
  EXPECT_FALSE(a.hermitian());
}

TEST(AznCoefficients, KnownValues) {
  auto c1 = a_zn_coefficients(1, 1);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1.at(1), Rational(2, 3));
  auto c2 = a_zn_coefficients(2, 1);
  EXPECT_EQ(c2.at(2), Rational(1, 3));
  EXPECT_EQ(c2.at(0), Rational(1, 4));
  EXPECT_EQ(a_zero_coefficient(2, 1), Rational(1, 4));
  for (int two_s = 1; two_s <= 6; ++two_s) {
    auto c3 = a_zn_coefficients(3, two_s);
    ASSERT_EQ(c3.size(), 2u);
    EXPECT_TRUE(c3.count(3) && c3.count(1));
  }
  EXPECT_THROW(a_zn_coefficients(0, 1), ValidationError);
  EXPECT_THROW(a_zn_coefficients(8, 1), ValidationError);
}

TEST(AznCoefficients, ParityAndZeroForm) {
  for (int two_s = 1; two_s <= 12; ++two_s) {
    for (int n = 1; n <= 7; ++n) {
      const auto c = a_zn_coefficients(n, two_s);
      for (const auto& [k, a] : c) {
        EXPECT_EQ((n - k) % 2, 0);
        EXPECT_GE(k, 0);
      }
      EXPECT_GT(c.at(n), 0);
      if (n % 2 == 0) EXPECT_EQ(c.at(0), a_zero_coefficient(n, two_s)) << n << " " << two_s;
    }
  }
}

TEST(AznCoefficients, MatchQuadratureForAllSupportedN) {
  for (int two_s : {1, 2, 3, 4, 5}) {
    const SpinRep rep(two_s);
    for (int n = 1; n <= 7; ++n) {
      const Operator quad = contravariant_matrix(
          {[n](const PhasePoint& p) { return cplx(std::pow(p.cartesian(0)[2], n)); }, n, {}}, rep);
      EXPECT_LE(max_entry_norm(quad.matrix() - a_zn_operator(n, rep).matrix()), 1e-10)
          << "n=" << n << " two_s=" << two_s;
    }
  }
}

TEST(Completeness, Defects) {
  EXPECT_LE(completeness_defect(SpinRep(1), 2), 1e-13);
  EXPECT_LE(completeness_defect(SpinRep(10), 20), 1e-12);
  EXPECT_LE(completeness_defect(SpinRep(2, 2), 4), 1e-12);
  EXPECT_THROW(completeness_defect(SpinRep(4), 7), ValidationError);
}

TEST(TraceIdentity, RandomHermitian) {
  std::mt19937_64 rng(21);
  for (int two_s : {1, 3, 6}) {
    const SpinRep rep(two_s);
    const Operator a(random_hermitian(rng, two_s + 1), true);
    const cplx q = trace_by_quadrature(a, rep);
    const cplx t = a.matrix().trace();
    EXPECT_LE(std::abs(q - t), 1e-11 * std::max(1.0, std::abs(t)));
  }
}

TEST(Duality, MixedRankOneAndGibbs) {
  const SpinRep rep(3);
  const Operator mixed = Operator(Matrix::Identity(4, 4) / 4.0, true);
  const ContravariantInput one{[](const PhasePoint&) { return cplx(1.0); }, 0, {}};
  EXPECT_LE(duality_gap(mixed, one, rep), 1e-12);

  std::mt19937_64 rng(1);
  const Operator pure(random_state(rng, 4, 1), true);
  EXPECT_LE(duality_gap(pure, {z_of, 1, {}}, rep), 1e-11);

  const SpinRep dimer(2, 2);
  const GibbsResult g = gibbs_operator(heisenberg_dimer(), dimer, 1.0);
  const ContravariantInput zz{
      [](const PhasePoint& p) { return cplx(p.cartesian(0)[2] * p.cartesian(1)[2]); }, 1, {}};
  EXPECT_LE(duality_gap(g.G, zz, dimer), 1e-10);
}

TEST(Duality, RejectsNonStates) {
  const SpinRep rep(1);
  const ContravariantInput one{[](const PhasePoint&) { return cplx(1.0); }, 0, {}};
  EXPECT_THROW(duality_gap(Operator(Matrix::Identity(2, 2), true), one, rep), ValidationError);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(duality_gap(Operator(neg, true), one, rep), ValidationError);
}

TEST(Intertwining, IdentityAndRandomRotations) {
  const auto z = [](const Vec3& x) { return cplx(x[2]); };
  const auto zz = [](const Vec3& x) { return cplx(x[2] * x[2]); };
  EXPECT_LE(intertwining_defect(0.0, 0.0, z, 1, SpinRep(2)), 1e-13);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ut(0.0, kPi), up(0.0, 2 * kPi);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LE(intertwining_defect(ut(rng), up(rng), z, 1, SpinRep(2)), 1e-10);
    EXPECT_LE(intertwining_defect(ut(rng), up(rng), zz, 2, SpinRep(3)), 1e-10);
  }
}
