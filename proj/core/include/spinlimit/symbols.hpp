#pragma once

/**
 * @file symbols.hpp
 * @brief Covariant symbols, contravariant matrices and their structural identities.
 *
 * The covariant symbol of A is g(A)(Omega) = <Omega|A|Omega>. The contravariant
 * matrix of F is A(F) = int F(Omega) |Omega><Omega| dOmega~ with the normalized
 * measure dOmega~ = ((2s+1)/(4 pi))^N dOmega.
 */

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spinlimit/quadrature.hpp"
#include "spinlimit/spincore.hpp"

namespace spinlimit {

using Rational = boost::multiprecision::cpp_rational;

struct SiteAxis {
  int site = 0;
  Axis axis = Axis::Z;

  friend bool operator==(const SiteAxis&, const SiteAxis&) = default;
};

/// Ordered product of scaled spin operators s_{j1} ... s_{jp}, j = (site, axis).
class MultiIndexMonomial {
 public:
  MultiIndexMonomial() = default;
  explicit MultiIndexMonomial(std::vector<SiteAxis> factors);

  const std::vector<SiteAxis>& factors() const noexcept { return factors_; }
  std::size_t degree() const noexcept { return factors_.size(); }
  /// Largest site index referenced plus one.
  int min_sites() const noexcept;

  /// Product of the classical components Omega_{j1} ... Omega_{jp}.
  double classical(const PhasePoint& point) const;

 private:
  std::vector<SiteAxis> factors_;
};

/// <Omega|A|Omega>. Throws ValidationError on a dimension mismatch.
cplx covariant_symbol(const Operator& a, const PhasePoint& point, const SpinRep& rep);

/// Covariant symbol of the scaled monomial, computed by applying each factor
/// to the coherent vector (right to left).
cplx monomial_symbol_direct(const MultiIndexMonomial& m, const PhasePoint& point,
                            const SpinRep& rep);

/// Dense matrix of the scaled monomial on the full space.
Operator monomial_operator(const MultiIndexMonomial& m, const SpinRep& rep);

struct ContravariantInput {
  PhaseFunction f;
  /// Total polynomial degree of F per site in (x, y, z).
  int polynomial_degree = 0;
  /// Per-site rule degree; defaults to 4s + polynomial_degree.
  std::optional<int> quadrature_degree;
};

/// Smallest per-site rule degree that keeps A(F) exact: 4s + deg F.
int required_degree(const SpinRep& rep, int polynomial_degree);

/// A(F) by rank-1 accumulation over the product rule. The result is flagged
/// Hermitian when F is real on every node. Throws ValidationError when the
/// requested degree is below 4s + deg F.
Operator contravariant_matrix(const ContravariantInput& input, const SpinRep& rep);

/// Exact A(z^n) coefficients {k -> a_k}, single site, 1 <= n <= 7. Only k = n mod 2.
std::map<int, Rational> a_zn_coefficients(int n, int two_s);

/// a_0 = (n-1)!! (1+2s)!! / (1+n+2s)!! for even n >= 2.
Rational a_zero_coefficient(int n, int two_s);

/// Sum_k a_k s3^k on a single site.
Operator a_zn_operator(int n, const SpinRep& rep);

/// max |((2s+1)/4pi)^N int |Omega><Omega| dOmega - 1|. Needs degree >= 4s.
double completeness_defect(const SpinRep& rep, int degree);

/// ((2s+1)/4pi)^N int <Omega|A|Omega> dOmega; default degree 4s.
cplx trace_by_quadrature(const Operator& a, const SpinRep& rep, std::optional<int> degree = {});

/// |Tr(W A(F)) - int g(W) F dOmega~| with one rule for both integrals.
/// W must be Hermitian, positive semidefinite and of unit trace, each to 1e-10.
double duality_gap(const Operator& w, const ContravariantInput& f, const SpinRep& rep);

/// Polynomial in Cartesian coordinates of a single site.
using CartesianFunction = std::function<cplx(const Vec3&)>;

/// |U A(F) U^dagger - A(F o R^{-1})|_max with R = rotation_from_unitary(U).
double intertwining_defect(const Operator& u, const CartesianFunction& f, int degree,
                           const SpinRep& rep);
/// Same with U = rotation_unitary(theta_g, phi_g).
double intertwining_defect(double theta_g, double phi_g, const CartesianFunction& f, int degree,
                           const SpinRep& rep);

}  // namespace spinlimit
