#include <complex>
#include <string>
#include <vector>

#include <lapacke.h>

#include "spinlimit/errors.hpp"
#include "spinlimit/spincore.hpp"

namespace spinlimit {

namespace {

// zheevr (MRRR) rather than zheevd: the divide-and-conquer driver shipped with
// the reference LAPACK on this platform returns wrong eigenvectors for n ~ 1700.
HermitianEigen solve(const Operator& a, bool want_vectors) {
  if (!a.hermitian()) {
    throw ValidationError("Hermitian eigensolver called on an operator not flagged Hermitian");
  }
  const auto n = static_cast<lapack_int>(a.dim());
  HermitianEigen out;
  out.values.resize(n);
  if (n == 0) return out;
  Matrix work = a.matrix();
  if (want_vectors) out.vectors.resize(n, n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'A', 'L', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n, 0.0, 0.0, 0, 0, 0.0, &found,
      out.values.data(),
      want_vectors ? reinterpret_cast<lapack_complex_double*>(out.vectors.data()) : nullptr,
      want_vectors ? n : 1, support.data());
  if (info != 0 || found != n) {
    throw Error("zheevr failed (info " + std::to_string(info) + ")");
  }
  return out;
}

}  // namespace

HermitianEigen eigh(const Operator& a) { return solve(a, true); }

Eigen::VectorXd eigenvalues(const Operator& a) { return solve(a, false).values; }

Operator hermitian_exp(const HermitianEigen& spectrum, double scale) {
  const Eigen::VectorXd e = (scale * spectrum.values).array().exp();
  const Matrix scaled = spectrum.vectors * e.asDiagonal();
  Matrix r = scaled * spectrum.vectors.adjoint();
  // Exact Hermitian symmetry regardless of the magnitude of the entries.
  r = (0.5 * (r + r.adjoint())).eval();
  return Operator(std::move(r), true);
}

Operator hermitian_exp(const Operator& h, double scale) { return hermitian_exp(eigh(h), scale); }

}  // namespace spinlimit
