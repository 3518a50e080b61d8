#include "spinlimit/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinlimit/errors.hpp"

namespace spinlimit {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kStateTol = 1e-10;

cpp_int factorial(int n) {
  cpp_int r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

cpp_int double_factorial(int n) {
  cpp_int r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

double measure_factor(const SpinRep& rep) {
  return std::pow((rep.two_s() + 1.0) / (4.0 * std::numbers::pi), rep.n_sites());
}

void check_dims(const Operator& a, const SpinRep& rep) {
  if (a.dim() != static_cast<Eigen::Index>(rep.dim())) {
    throw ValidationError("operator dimension " + std::to_string(a.dim()) +
                          " does not match (2s+1)^N = " + std::to_string(rep.dim()));
  }
}

int resolve_degree(const ContravariantInput& in, const SpinRep& rep) {
  const int need = required_degree(rep, in.polynomial_degree);
  const int deg = in.quadrature_degree.value_or(need);
  if (deg < need) {
    throw ValidationError("quadrature degree " + std::to_string(deg) +
                          " is below 4s + deg F = " + std::to_string(need));
  }
  return deg;
}

}  // namespace

MultiIndexMonomial::MultiIndexMonomial(std::vector<SiteAxis> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ValidationError("monomial needs at least one factor");
  for (const auto& f : factors_) {
    if (f.site < 0) throw ValidationError("monomial site must be >= 0");
    const int a = static_cast<int>(f.axis);
    if (a < 1 || a > 3) throw ValidationError("monomial axis must be 1, 2 or 3");
  }
}

int MultiIndexMonomial::min_sites() const noexcept {
  int n = 0;
  for (const auto& f : factors_) n = std::max(n, f.site + 1);
  return n;
}

double MultiIndexMonomial::classical(const PhasePoint& point) const {
  double v = 1.0;
  for (const auto& f : factors_) v *= point.component(static_cast<std::size_t>(f.site), f.axis);
  return v;
}

cplx covariant_symbol(const Operator& a, const PhasePoint& point, const SpinRep& rep) {
  check_dims(a, rep);
  const Vector v = coherent_vector_n(rep, point);
  return v.dot(a.matrix() * v);
}

cplx monomial_symbol_direct(const MultiIndexMonomial& m, const PhasePoint& point,
                            const SpinRep& rep) {
  if (m.min_sites() > rep.n_sites()) {
    throw ValidationError("monomial references a site beyond the representation");
  }
  const SpinMatrices sm = make_spin_matrices(rep.single_site());
  const double inv_s = 1.0 / rep.s();
  const Vector v = coherent_vector_n(rep, point);
  Vector w = v;
  const auto& fs = m.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
    w = apply_on_site(sm.axis(it->axis).matrix(), it->site, rep, w) * inv_s;
  }
  return v.dot(w);
}

Operator monomial_operator(const MultiIndexMonomial& m, const SpinRep& rep) {
  if (m.min_sites() > rep.n_sites()) {
    throw ValidationError("monomial references a site beyond the representation");
  }
  const SpinMatrices sm = make_spin_matrices(rep.single_site());
  const auto n = static_cast<Eigen::Index>(rep.dim());
  Matrix out = Matrix::Identity(n, n);
  for (const auto& f : m.factors()) {
    out = out * embed_site(sm.axis(f.axis), f.site, rep).matrix() / rep.s();
  }
  return Operator(std::move(out));
}

int required_degree(const SpinRep& rep, int polynomial_degree) {
  return 2 * rep.two_s() + polynomial_degree;
}

Operator contravariant_matrix(const ContravariantInput& input, const SpinRep& rep) {
  if (!input.f) throw ValidationError("contravariant input has no function");
  const int deg = resolve_degree(input, rep);
  const auto n = static_cast<Eigen::Index>(rep.dim());
  Matrix acc = Matrix::Zero(n, n);
  double max_imag = 0.0;
  double max_abs = 0.0;
  const ProductGrid grid(SphereRule(deg), rep.n_sites());
  grid.for_each([&](const PhasePoint& p, double w) {
    const cplx fv = input.f(p);
    if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag())) {
      throw ValidationError("contravariant input is not finite on a quadrature node");
    }
    max_imag = std::max(max_imag, std::abs(fv.imag()));
    max_abs = std::max(max_abs, std::abs(fv));
    const Vector v = coherent_vector_n(rep, p);
    acc.noalias() += (w * fv * v) * v.adjoint();
  });
  acc *= measure_factor(rep);
  if (max_imag == 0.0) {
    acc = (0.5 * (acc + acc.adjoint())).eval();
    return Operator(std::move(acc), true);
  }
  return Operator(std::move(acc));
}

std::map<int, Rational> a_zn_coefficients(int n, int two_s) {
  if (n < 1 || n > 7) {
    throw ValidationError("A(z^n) coefficients are available for 1 <= n <= 7, got n = " +
                          std::to_string(n));
  }
  if (two_s < 1) throw ValidationError("two_s must be >= 1");
  const Rational s(two_s, 2);
  const cpp_int fn = factorial(n);
  const cpp_int f2s1 = factorial(two_s + 1);
  const cpp_int fden = factorial(n + two_s + 1);
  const cpp_int pow2 = cpp_int(1) << n;
  std::map<int, Rational> a;
  a[n] = Rational(pow2 * f2s1, fden);
  if (n >= 2) {
    a[n - 2] = Rational(fn * pow2 * f2s1, 2 * 6 * factorial(n - 2) * fden) * (1 + n + 3 * s);
  }
  if (n >= 4) {
    a[n - 4] = Rational(fn * pow2 * f2s1, 2 * 720 * factorial(n - 4) * fden) *
               (-2 + n * (3 + 5 * n) + 15 * s * (1 + 2 * n + 3 * s));
  }
  if (n >= 6) {
    a[n - 6] = Rational(fn * pow2 * f2s1, 362880 * factorial(n - 6) * fden) *
               ((1 + n) * (12 + 7 * n * (-11 + 5 * n)) + 63 * (n - 1) * (3 + 5 * n) * s +
                945 * n * s * s + 945 * s * s * s);
  }
  return a;
}

Rational a_zero_coefficient(int n, int two_s) {
  if (n < 2 || n % 2 != 0) throw ValidationError("a_0 is defined for even n >= 2");
  if (two_s < 1) throw ValidationError("two_s must be >= 1");
  return Rational(double_factorial(n - 1) * double_factorial(1 + two_s),
                  double_factorial(1 + n + two_s));
}

Operator a_zn_operator(int n, const SpinRep& rep) {
  if (rep.n_sites() != 1) throw ValidationError("A(z^n) is a single-site operator");
  const auto coeffs = a_zn_coefficients(n, rep.two_s());
  const auto d = static_cast<Eigen::Index>(rep.local_dim());
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = 0.5 * static_cast<double>(rep.two_s() - 2 * k);
    double v = 0.0;
    for (const auto& [power, a] : coeffs) v += static_cast<double>(a) * std::pow(m, power);
    out(k, k) = v;
  }
  return Operator(std::move(out), true);
}

double completeness_defect(const SpinRep& rep, int degree) {
  if (degree < 2 * rep.two_s()) {
    throw ValidationError("completeness needs quadrature degree >= 4s = " +
                          std::to_string(2 * rep.two_s()));
  }
  const Operator one = contravariant_matrix(
      {[](const PhasePoint&) { return cplx(1.0, 0.0); }, 0, degree}, rep);
  const auto n = static_cast<Eigen::Index>(rep.dim());
  return max_entry_norm(one.matrix() - Matrix::Identity(n, n));
}

cplx trace_by_quadrature(const Operator& a, const SpinRep& rep, std::optional<int> degree) {
  check_dims(a, rep);
  const int deg = degree.value_or(2 * rep.two_s());
  const ProductGrid grid(SphereRule(deg), rep.n_sites());
  PairwiseSum<cplx> sum;
  const Matrix& m = a.matrix();
  grid.for_each([&](const PhasePoint& p, double w) {
    const Vector v = coherent_vector_n(rep, p);
    sum.add(w * v.dot(m * v));
  });
  return measure_factor(rep) * sum.result();
}

double duality_gap(const Operator& w, const ContravariantInput& f, const SpinRep& rep) {
  check_dims(w, rep);
  if (w.hermiticity_defect() > kStateTol) throw ValidationError("W is not Hermitian");
  const Matrix& wm = w.matrix();
  if (std::abs(wm.trace() - cplx(1.0, 0.0)) > kStateTol) {
    throw ValidationError("W does not have unit trace");
  }
  const Operator wh(0.5 * (wm + wm.adjoint()), true);
  if (eigenvalues(wh).minCoeff() < -kStateTol) {
    throw ValidationError("W is not positive semidefinite");
  }
  const Operator af = contravariant_matrix(f, rep);
  const cplx lhs = (wm * af.matrix()).trace();

  const int deg = resolve_degree(f, rep);
  const ProductGrid grid(SphereRule(deg), rep.n_sites());
  PairwiseSum<cplx> sum;
  grid.for_each([&](const PhasePoint& p, double weight) {
    const Vector v = coherent_vector_n(rep, p);
    sum.add(weight * v.dot(wm * v) * f.f(p));
  });
  const cplx rhs = measure_factor(rep) * sum.result();
  return std::abs(lhs - rhs);
}

double intertwining_defect(const Operator& u, const CartesianFunction& f, int degree,
                           const SpinRep& rep) {
  if (rep.n_sites() != 1) throw ValidationError("intertwining is checked on a single site");
  const RealMatrix3 r = rotation_from_unitary(u, rep);
  const ContravariantInput direct{
      [&](const PhasePoint& p) { return f(p.cartesian(0)); }, degree, {}};
  const ContravariantInput rotated{
      [&](const PhasePoint& p) {
        const Vec3& x = p.cartesian(0);
        const Eigen::Vector3d back = r.transpose() * Eigen::Vector3d(x[0], x[1], x[2]);
        return f({back[0], back[1], back[2]});
      },
      degree,
      {}};
  const Matrix& um = u.matrix();
  const Matrix lhs = um * contravariant_matrix(direct, rep).matrix() * um.adjoint();
  return max_entry_norm(lhs - contravariant_matrix(rotated, rep).matrix());
}

double intertwining_defect(double theta_g, double phi_g, const CartesianFunction& f, int degree,
                           const SpinRep& rep) {
  return intertwining_defect(rotation_unitary(rep, theta_g, phi_g), f, degree, rep);
}

}  // namespace spinlimit
