#pragma once

/**
 * @file spincore.hpp
 * @brief Spin-s matrices, N-site embeddings, rotations and spin coherent states.
 *
 * The single-site basis is |m>, m = s, s-1, ..., -s, with index 0 <-> m = s.
 * Multi-site states are Kronecker products with site 0 as the leftmost
 * (slowest varying) factor. The spin quantum number is always carried as the
 * integer 2s.
 */

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace spinlimit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Vec3 = std::array<double, 3>;
using RealMatrix3 = Eigen::Matrix3d;

inline constexpr std::size_t kDefaultDimCap = 4096;

enum class Axis : int { X = 1, Y = 2, Z = 3 };

/// 0-based component index of an axis (X -> 0).
constexpr int component(Axis a) noexcept { return static_cast<int>(a) - 1; }

/// Spin quantum number (as 2s) and site count. Fixes dim = (2s+1)^N.
class SpinRep {
 public:
  /// Throws ValidationError for two_s < 1 or n_sites < 1 and
  /// ResourceCapError when (2s+1)^N exceeds @p dim_cap.
  SpinRep(int two_s, int n_sites = 1, std::size_t dim_cap = kDefaultDimCap);

  int two_s() const noexcept { return two_s_; }
  int n_sites() const noexcept { return n_sites_; }
  double s() const noexcept { return 0.5 * two_s_; }
  std::size_t local_dim() const noexcept { return static_cast<std::size_t>(two_s_) + 1; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t dim_cap() const noexcept { return dim_cap_; }

  /// The single-site representation with the same spin.
  SpinRep single_site() const { return SpinRep(two_s_, 1, dim_cap_); }

  friend bool operator==(const SpinRep& a, const SpinRep& b) noexcept {
    return a.two_s_ == b.two_s_ && a.n_sites_ == b.n_sites_;
  }

 private:
  int two_s_;
  int n_sites_;
  std::size_t dim_;
  std::size_t dim_cap_;
};

/// Dense complex square matrix with a Hermitian flag.
class Operator {
 public:
  Operator() = default;
  /// When @p hermitian is set the matrix must satisfy max|A - A^dagger| <= 1e-12.
  explicit Operator(Matrix m, bool hermitian = false);

  static Operator identity(std::size_t dim);
  static Operator zero(std::size_t dim);

  const Matrix& matrix() const noexcept { return m_; }
  bool hermitian() const noexcept { return hermitian_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// Largest entry modulus of A - A^dagger.
  double hermiticity_defect() const;

 private:
  Matrix m_;
  bool hermitian_ = false;
};

/// Max-entry norm |A|_max.
double max_entry_norm(const Matrix& a);

/// Polar and azimuthal angle of one site; theta in [0, pi], phi in [0, 2pi).
struct SphereAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Cartesian unit vector (sin t cos p, sin t sin p, cos t).
Vec3 to_cartesian(const SphereAngles& a) noexcept;

/// A point of the N-fold product of unit spheres.
class PhasePoint {
 public:
  PhasePoint() = default;
  /// Throws ValidationError when a theta lies outside [0, pi] or is not
  /// finite. Azimuths are reduced into [0, 2pi).
  explicit PhasePoint(std::vector<SphereAngles> sites);
  static PhasePoint single(double theta, double phi) { return PhasePoint({{theta, phi}}); }

  std::size_t n_sites() const noexcept { return angles_.size(); }
  const SphereAngles& angles(std::size_t site) const { return angles_.at(site); }
  const Vec3& cartesian(std::size_t site) const { return xyz_.at(site); }
  double component(std::size_t site, Axis axis) const {
    return xyz_.at(site)[static_cast<std::size_t>(spinlimit::component(axis))];
  }
  const std::vector<SphereAngles>& all_angles() const noexcept { return angles_; }

 private:
  std::vector<SphereAngles> angles_;
  std::vector<Vec3> xyz_;
};

struct SpinMatrices {
  Operator s1, s2, s3, s_plus, s_minus;

  const Operator& axis(Axis a) const;
};

/// Spin matrices of a single site. @p rep must have one site.
SpinMatrices make_spin_matrices(const SpinRep& rep);

/// Identity on every site except @p site, which carries @p op.
Operator embed_site(const Operator& op, int site, const SpinRep& rep);

/// Computes (1 x ... x local x ... x 1) v without forming the embedded matrix.
Vector apply_on_site(const Matrix& local, int site, const SpinRep& rep, const Vector& v);

/// Coefficients of U(Omega)^dagger s_i U(Omega) = c3 s3 + c_minus s_- + c_plus s_+.
struct RotatedCoeffs {
  double c3 = 0.0;
  cplx c_minus{};
  cplx c_plus{};

  /// Coefficient selected by a matrix-element step: 0 -> c3, -1 -> c_minus, +1 -> c_plus.
  cplx by_step(int step) const;
};

RotatedCoeffs rotated_coeffs(Axis axis, double theta, double phi);

/// U(Omega) = exp[(theta/2)(e^{i phi} s_- - e^{-i phi} s_+)] on one site.
Operator rotation_unitary(const SpinRep& rep, double theta, double phi);

/// Single-site spin coherent state |Omega> = U(Omega)|s>. At theta = pi the
/// azimuth is taken as 0.
Vector coherent_vector(const SpinRep& rep, double theta, double phi);

/// |Omega_1> x ... x |Omega_N>. Throws ValidationError on a site-count mismatch.
Vector coherent_vector_n(const SpinRep& rep, const PhasePoint& point);

// ---------------------------------------------------------------------------
// Hermitian spectral calculus

/// Eigen-decomposition A = V diag(values) V^dagger, values ascending.
struct HermitianEigen {
  Eigen::VectorXd values;
  Matrix vectors;
};

/// Full eigendecomposition. Throws ValidationError if @p a is not flagged Hermitian.
HermitianEigen eigh(const Operator& a);

/// Eigenvalues only (ascending).
Eigen::VectorXd eigenvalues(const Operator& a);

/// exp(scale * H) via V e^{scale Lambda} V^dagger.
Operator hermitian_exp(const Operator& h, double scale);
Operator hermitian_exp(const HermitianEigen& spectrum, double scale);

/// SO(3) matrix with R_ji = Tr(s_j U s_i U^dagger) / Tr(s_j^2).
/// Throws ValidationError when @p u is not unitary to 1e-10.
RealMatrix3 rotation_from_unitary(const Operator& u, const SpinRep& rep);

}  // namespace spinlimit
