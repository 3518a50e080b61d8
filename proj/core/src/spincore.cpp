#include "spinlimit/spincore.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/binomial.hpp>

#include "spinlimit/errors.hpp"

namespace spinlimit {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;

std::size_t checked_power(std::size_t base, int exponent, std::size_t cap) {
  std::size_t dim = 1;
  for (int i = 0; i < exponent; ++i) {
    if (dim > cap / base) return cap + 1;
    dim *= base;
  }
  return dim;
}

std::size_t ipow(std::size_t base, int exponent) {
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace

SpinRep::SpinRep(int two_s, int n_sites, std::size_t dim_cap)
    : two_s_(two_s), n_sites_(n_sites), dim_(0), dim_cap_(dim_cap) {
  if (two_s < 1) {
    throw ValidationError("two_s must be >= 1 (the trivial representation is not supported), got " +
                          std::to_string(two_s));
  }
  if (n_sites < 1) {
    throw ValidationError("n_sites must be >= 1, got " + std::to_string(n_sites));
  }
  dim_ = checked_power(static_cast<std::size_t>(two_s) + 1, n_sites, dim_cap);
  if (dim_ > dim_cap) {
    throw ResourceCapError("Hilbert dimension (2s+1)^N = " + std::to_string(two_s + 1) + "^" +
                           std::to_string(n_sites) + " exceeds the dimension cap " +
                           std::to_string(dim_cap));
  }
}

Operator::Operator(Matrix m, bool hermitian) : m_(std::move(m)), hermitian_(hermitian) {
  if (m_.rows() != m_.cols()) {
    throw ValidationError("operator matrix must be square");
  }
  if (hermitian_ && hermiticity_defect() > kHermitianTol) {
    throw ValidationError("matrix flagged Hermitian has |A - A^dagger|_max = " +
                          std::to_string(hermiticity_defect()));
  }
}

Operator Operator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Identity(n, n), true);
}

Operator Operator::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Zero(n, n), true);
}

double Operator::hermiticity_defect() const { return max_entry_norm(m_ - m_.adjoint()); }

double max_entry_norm(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Vec3 to_cartesian(const SphereAngles& a) noexcept {
  const double st = std::sin(a.theta);
  return {st * std::cos(a.phi), st * std::sin(a.phi), std::cos(a.theta)};
}

PhasePoint::PhasePoint(std::vector<SphereAngles> sites) : angles_(std::move(sites)) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  xyz_.reserve(angles_.size());
  for (auto& a : angles_) {
    if (!std::isfinite(a.theta) || !std::isfinite(a.phi) || a.theta < 0.0 ||
        a.theta > std::numbers::pi) {
      throw ValidationError("polar angle must lie in [0, pi], got " + std::to_string(a.theta));
    }
    a.phi = std::fmod(a.phi, two_pi);
    if (a.phi < 0.0) a.phi += two_pi;
    if (a.phi >= two_pi) a.phi = 0.0;
    xyz_.push_back(to_cartesian(a));
  }
}

const Operator& SpinMatrices::axis(Axis a) const {
  switch (a) {
    case Axis::X: return s1;
    case Axis::Y: return s2;
    case Axis::Z: return s3;
  }
  throw ValidationError("invalid axis");
}

SpinMatrices make_spin_matrices(const SpinRep& rep) {
  if (rep.n_sites() != 1) {
    throw ValidationError("make_spin_matrices needs a single-site representation");
  }
  const int two_s = rep.two_s();
  const auto d = static_cast<Eigen::Index>(rep.local_dim());
  Matrix s3 = Matrix::Zero(d, d);
  Matrix sp = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    s3(k, k) = 0.5 * static_cast<double>(two_s - 2 * k);
    // <m+1| s_+ |m> with m = s - k equals sqrt(k (2s - k + 1)).
    if (k > 0) sp(k - 1, k) = std::sqrt(static_cast<double>(k * (two_s - k + 1)));
  }
  Matrix sm = sp.adjoint();
  Matrix s1 = 0.5 * (sp + sm);
  Matrix s2 = (sp - sm) / cplx(0.0, 2.0);
  return SpinMatrices{Operator(std::move(s1), true), Operator(std::move(s2), true),
                      Operator(std::move(s3), true), Operator(std::move(sp)),
                      Operator(std::move(sm))};
}

Operator embed_site(const Operator& op, int site, const SpinRep& rep) {
  if (site < 0 || site >= rep.n_sites()) {
    throw ValidationError("site " + std::to_string(site) + " out of range for " +
                          std::to_string(rep.n_sites()) + " sites");
  }
  const auto d = static_cast<Eigen::Index>(rep.local_dim());
  if (op.dim() != d) throw ValidationError("embed_site: operator is not single-site");
  const auto left = static_cast<Eigen::Index>(ipow(rep.local_dim(), site));
  const auto right = static_cast<Eigen::Index>(ipow(rep.local_dim(), rep.n_sites() - site - 1));
  const auto n = static_cast<Eigen::Index>(rep.dim());
  Matrix out = Matrix::Zero(n, n);
  const Matrix& a = op.matrix();
  for (Eigen::Index l = 0; l < left; ++l)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        if (a(i, j) == cplx{}) continue;
        for (Eigen::Index r = 0; r < right; ++r)
          out((l * d + i) * right + r, (l * d + j) * right + r) = a(i, j);
      }
  return Operator(std::move(out), op.hermitian());
}

Vector apply_on_site(const Matrix& local, int site, const SpinRep& rep, const Vector& v) {
  if (site < 0 || site >= rep.n_sites()) {
    throw ValidationError("site " + std::to_string(site) + " out of range");
  }
  const auto d = static_cast<Eigen::Index>(rep.local_dim());
  if (local.rows() != d || local.cols() != d || v.size() != static_cast<Eigen::Index>(rep.dim())) {
    throw ValidationError("apply_on_site: dimension mismatch");
  }
  const auto left = static_cast<Eigen::Index>(ipow(rep.local_dim(), site));
  const auto right = static_cast<Eigen::Index>(ipow(rep.local_dim(), rep.n_sites() - site - 1));
  Vector out(v.size());
  const Matrix local_t = local.transpose();
  for (Eigen::Index l = 0; l < left; ++l) {
    Eigen::Map<const Matrix> in_block(v.data() + l * d * right, right, d);
    Eigen::Map<Matrix> out_block(out.data() + l * d * right, right, d);
    out_block.noalias() = in_block * local_t;
  }
  return out;
}

cplx RotatedCoeffs::by_step(int step) const {
  switch (step) {
    case 0: return {c3, 0.0};
    case -1: return c_minus;
    case 1: return c_plus;
    default: throw ValidationError("step must be -1, 0 or +1");
  }
}

RotatedCoeffs rotated_coeffs(Axis axis, double theta, double phi) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const cplx eip = std::polar(1.0, phi);
  RotatedCoeffs c;
  switch (axis) {
    case Axis::X:
      c.c3 = st * cp;
      c.c_minus = 0.5 * eip * cplx(ct * cp, -sp);
      break;
    case Axis::Y:
      c.c3 = st * sp;
      c.c_minus = 0.5 * eip * cplx(ct * sp, cp);
      break;
    case Axis::Z:
      c.c3 = ct;
      c.c_minus = -0.5 * eip * st;
      break;
  }
  c.c_plus = std::conj(c.c_minus);
  return c;
}

Operator rotation_unitary(const SpinRep& rep, double theta, double phi) {
  const auto sm = make_spin_matrices(rep.single_site());
  // K = (theta/2)(e^{i phi} s_- - e^{-i phi} s_+) is anti-Hermitian; exp(K) = exp(-i H), H = iK.
  const cplx eip = std::polar(1.0, phi);
  Matrix k = (0.5 * theta) * (eip * sm.s_minus.matrix() - std::conj(eip) * sm.s_plus.matrix());
  Matrix h = cplx(0.0, 1.0) * k;
  h = 0.5 * (h + h.adjoint()).eval();
  const HermitianEigen spec = eigh(Operator(std::move(h), true));
  Eigen::VectorXcd phases(spec.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -spec.values(i));
  Matrix u = spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
  return Operator(std::move(u));
}

Vector coherent_vector(const SpinRep& rep, double theta, double phi) {
  if (theta == std::numbers::pi) phi = 0.0;
  const int two_s = rep.two_s();
  const double c = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  Vector v(two_s + 1);
  const bool linear = two_s <= 1000;
  for (int k = 0; k <= two_s; ++k) {
    // m = s - k: amplitude binom(2s, k)^{1/2} cos^{2s-k}(theta/2) sin^{k}(theta/2) e^{i k phi}.
    double mag;
    if (linear) {
      mag = std::sqrt(boost::math::binomial_coefficient<double>(static_cast<unsigned>(two_s),
                                                               static_cast<unsigned>(k))) *
            std::pow(c, two_s - k) * std::pow(sn, k);
    } else {
      const auto lpow = [](double x, int e) { return e == 0 ? 0.0 : e * std::log(x); };
      const double lbin =
          std::lgamma(two_s + 1.0) - std::lgamma(k + 1.0) - std::lgamma(two_s - k + 1.0);
      mag = std::exp(0.5 * lbin + lpow(c, two_s - k) + lpow(sn, k));
    }
    v(k) = std::polar(mag, k * phi);
  }
  return v;
}

Vector coherent_vector_n(const SpinRep& rep, const PhasePoint& point) {
  if (point.n_sites() != static_cast<std::size_t>(rep.n_sites())) {
    throw ValidationError("phase point has " + std::to_string(point.n_sites()) +
                          " sites, representation has " + std::to_string(rep.n_sites()));
  }
  const SpinRep one = rep.single_site();
  Vector out = Vector::Ones(1);
  for (std::size_t mu = 0; mu < point.n_sites(); ++mu) {
    const auto& a = point.angles(mu);
    const Vector site = coherent_vector(one, a.theta, a.phi);
    Vector next(out.size() * site.size());
    for (Eigen::Index i = 0; i < out.size(); ++i)
      next.segment(i * site.size(), site.size()) = out(i) * site;
    out = std::move(next);
  }
  return out;
}

RealMatrix3 rotation_from_unitary(const Operator& u, const SpinRep& rep) {
  if (u.dim() != static_cast<Eigen::Index>(rep.local_dim())) {
    throw ValidationError("rotation_from_unitary: dimension mismatch");
  }
  const Matrix& um = u.matrix();
  const double defect =
      max_entry_norm(um.adjoint() * um - Matrix::Identity(um.rows(), um.cols()));
  if (defect > kUnitaryTol) {
    throw ValidationError("rotation_from_unitary: matrix is not unitary (defect " +
                          std::to_string(defect) + ")");
  }
  const auto sm = make_spin_matrices(rep.single_site());
  const double s = rep.s();
  const double norm = s * (s + 1.0) * (2.0 * s + 1.0) / 3.0;
  const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
  RealMatrix3 r;
  for (int i = 0; i < 3; ++i) {
    const Matrix rotated = um * sm.axis(axes[i]).matrix() * um.adjoint();
    for (int j = 0; j < 3; ++j) {
      r(j, i) = (sm.axis(axes[j]).matrix() * rotated).trace().real() / norm;
    }
  }
  return r;
}

}  // namespace spinlimit
