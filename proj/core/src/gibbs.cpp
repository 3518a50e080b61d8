#include "spinlimit/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinlimit/errors.hpp"
#include "spinlimit/quadrature.hpp"

namespace spinlimit {

namespace {

// Largest exponent -beta * lambda; the log-sum-exp shift.
double max_exponent(const Eigen::VectorXd& values, double beta) {
  return beta >= 0.0 ? -beta * values.minCoeff() : -beta * values.maxCoeff();
}

Eigen::VectorXd shifted_weights(const Eigen::VectorXd& values, double beta, double shift) {
  return (-beta * values.array() - shift).exp().matrix();
}

double dim_of(const SpinRep& rep) { return static_cast<double>(rep.dim()); }

}  // namespace

GibbsResult gibbs_operator(const HamiltonianSpec& spec, const SpinRep& rep, double beta) {
  return gibbs_operator(eigh(quantum_hamiltonian(spec, rep)), rep, beta);
}

GibbsResult gibbs_operator(const HermitianEigen& spectrum, const SpinRep& rep, double beta) {
  if (spectrum.values.size() != static_cast<Eigen::Index>(rep.dim())) {
    throw ValidationError("spectrum dimension does not match the representation");
  }
  Operator w = hermitian_exp(spectrum, -beta);
  const double trace = w.matrix().trace().real();
  if (!(trace > 0.0) || !std::isfinite(trace)) {
    throw Error("Tr e^{-beta H} is not a positive finite number at beta = " + std::to_string(beta));
  }
  Operator g(w.matrix() / trace, true);
  return GibbsResult{std::move(w), trace, std::move(g), beta, rep};
}

SpectralGibbs::SpectralGibbs(const HamiltonianSpec& spec, const SpinRep& rep)
    : rep_(rep), eig_(eigh(quantum_hamiltonian(spec, rep))) {}

double SpectralGibbs::log_trace(double beta) const {
  const double shift = max_exponent(eig_.values, beta);
  return shift + std::log(shifted_weights(eig_.values, beta, shift).sum());
}

double SpectralGibbs::scaled_partition(double beta) const {
  return std::exp(log_trace(beta) - std::log(dim_of(rep_)));
}

double SpectralGibbs::thermal_expectation(double beta) const {
  const Eigen::VectorXd w = shifted_weights(eig_.values, beta, max_exponent(eig_.values, beta));
  return w.dot(eig_.values) / w.sum();
}

double SpectralGibbs::boltzmann_symbol(double beta, const PhasePoint& point) const {
  const Vector c = eig_.vectors.adjoint() * coherent_vector_n(rep_, point);
  const Eigen::VectorXd w = (-beta * eig_.values.array()).exp().matrix();
  return w.dot(c.cwiseAbs2());
}

double SpectralGibbs::scaled_symbol(double beta, const PhasePoint& point) const {
  const Vector c = eig_.vectors.adjoint() * coherent_vector_n(rep_, point);
  const Eigen::VectorXd w = shifted_weights(eig_.values, beta, max_exponent(eig_.values, beta));
  return dim_of(rep_) * w.dot(c.cwiseAbs2()) / w.sum();
}

GibbsResult SpectralGibbs::gibbs(double beta) const { return gibbs_operator(eig_, rep_, beta); }

Operator truncated_exponential(const Operator& h, double beta, int n) {
  if (n < 0) throw ValidationError("truncation order must be >= 0");
  const auto d = h.dim();
  // sum_{k<=n} (-beta H)^k / k! = 1 + (-beta H/1)(1 + (-beta H/2)(1 + ...)).
  Matrix acc = Matrix::Identity(d, d);
  for (int k = n; k >= 1; --k) {
    acc = Matrix::Identity(d, d) + (-beta / k) * (h.matrix() * acc);
  }
  if (h.hermitian()) {
    acc = (0.5 * (acc + acc.adjoint())).eval();
    return Operator(std::move(acc), true);
  }
  return Operator(std::move(acc));
}

std::vector<double> truncated_gibbs_symbols(const Operator& h, const SpinRep& rep, double beta,
                                            int n_max, const PhasePoint& point) {
  if (n_max < 0) throw ValidationError("truncation order must be >= 0");
  if (h.dim() != static_cast<Eigen::Index>(rep.dim())) {
    throw ValidationError("Hamiltonian dimension does not match the representation");
  }
  const Vector v = coherent_vector_n(rep, point);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  Vector w = v;
  double coeff = 1.0;
  double partial = 0.0;
  for (int k = 0; k <= n_max; ++k) {
    if (k > 0) {
      w = h.matrix() * w;
      coeff *= -beta / k;
    }
    partial += coeff * v.dot(w).real();
    out.push_back(partial);
  }
  return out;
}

double truncated_gibbs_symbol(const HamiltonianSpec& spec, const SpinRep& rep, double beta, int n,
                              const PhasePoint& point) {
  return truncated_gibbs_symbols(quantum_hamiltonian(spec, rep), rep, beta, n, point).back();
}

double classical_truncated(const HamiltonianSpec& spec, double beta, int n,
                           const PhasePoint& point) {
  if (n < 0) throw ValidationError("truncation order must be >= 0");
  const double x = -beta * classical_hamiltonian(spec, point);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= n; ++k) {
    term *= x / k;
    sum += term;
  }
  return sum;
}

int default_classical_degree(const HamiltonianSpec& spec, double beta) {
  const double scale = std::abs(beta) * spec.L() * spec.J_max();
  return static_cast<int>(std::clamp(std::ceil(2.0 * scale) + 24.0, 24.0, 96.0));
}

ClassicalPartition classical_partition(const HamiltonianSpec& spec, double beta,
                                       const ClassicalPartitionOptions& opts) {
  ClassicalPartition out;
  if (beta == 0.0) {
    out.value = 1.0;
    return out;
  }
  const auto f = [&](const PhasePoint& p) {
    return cplx(std::exp(-beta * classical_hamiltonian(spec, p)), 0.0);
  };
  const double volume = std::pow(4.0 * std::numbers::pi, spec.n_sites());
  if (spec.n_sites() <= 2) {
    const int deg = opts.quadrature_degree.value_or(default_classical_degree(spec, beta));
    out.quadrature_degree = deg;
    out.value = integrate(ProductGrid(SphereRule(deg), spec.n_sites()), f).real() / volume;
    return out;
  }
  const McEstimate est = mc_sphere(spec.n_sites(), opts.mc_samples, opts.seed, f);
  out.value = est.value.real() / volume;
  out.std_error = est.std_error / volume;
  out.monte_carlo = true;
  return out;
}

double classical_gibbs_density(const HamiltonianSpec& spec, double beta, const PhasePoint& point,
                               double z_cl) {
  if (!(z_cl > 0.0)) throw ValidationError("classical partition function must be positive");
  return std::exp(-beta * classical_hamiltonian(spec, point)) / z_cl;
}

double scaled_gibbs_symbol(const HamiltonianSpec& spec, const SpinRep& rep, double beta,
                           const PhasePoint& point) {
  return SpectralGibbs(spec, rep).scaled_symbol(beta, point);
}

double scaled_partition(const HamiltonianSpec& spec, const SpinRep& rep, double beta) {
  const Eigen::VectorXd values = eigenvalues(quantum_hamiltonian(spec, rep));
  const double shift = max_exponent(values, beta);
  return std::exp(shift + std::log(shifted_weights(values, beta, shift).sum()) -
                  std::log(dim_of(rep)));
}

double thermal_expectation(const HamiltonianSpec& spec, const SpinRep& rep, double beta) {
  const Eigen::VectorXd values = eigenvalues(quantum_hamiltonian(spec, rep));
  const Eigen::VectorXd w = shifted_weights(values, beta, max_exponent(values, beta));
  return w.dot(values) / w.sum();
}

double convergence_bound(const HamiltonianSpec& spec, const SpinRep& rep, double beta) {
  const double blj = beta * spec.L() * spec.J_max();
  return blj * spec.p() * std::exp(blj) / std::sqrt(static_cast<double>(rep.two_s()));
}

std::vector<PhasePoint> scan_points(const ScanGrid& grid, int n_sites) {
  if (grid.n_points < 1) throw ValidationError("scan grid needs at least one point");
  if (n_sites < 1) throw ValidationError("scan needs at least one site");
  std::vector<PhasePoint> pts;
  pts.reserve(static_cast<std::size_t>(grid.n_points));
  if (grid.kind == ScanGrid::Kind::Theta) {
    const int moving = n_sites == 1 ? 0 : 1;
    for (int k = 0; k < grid.n_points; ++k) {
      const double theta =
          grid.n_points == 1 ? 0.0 : std::numbers::pi * k / (grid.n_points - 1);
      std::vector<SphereAngles> a(static_cast<std::size_t>(n_sites));
      a[static_cast<std::size_t>(moving)] = {theta, 0.0};
      pts.emplace_back(std::move(a));
    }
    return pts;
  }
  McSphereSampler(n_sites, static_cast<std::size_t>(grid.n_points), grid.seed)
      .for_each([&](const PhasePoint& p) { pts.push_back(p); });
  return pts;
}

ScanReport convergence_scan(const HamiltonianSpec& spec, double beta,
                            const std::vector<int>& two_s_list, const ScanGrid& grid,
                            std::size_t dim_cap, const ClassicalPartitionOptions& classical) {
  if (two_s_list.empty()) throw ValidationError("scan needs at least one spin value");
  const std::vector<PhasePoint> pts = scan_points(grid, spec.n_sites());
  // Validate every representation before any diagonalization.
  std::vector<SpinRep> reps;
  for (int two_s : two_s_list) reps.emplace_back(two_s, spec.n_sites(), dim_cap);

  ScanReport report;
  report.n_points = static_cast<int>(pts.size());
  report.z_classical = classical_partition(spec, beta, classical).value;
  for (const auto& rep : reps) {
    const SpectralGibbs sg(spec, rep);
    const double bound = convergence_bound(spec, rep, beta);
    ScanSummary summary{rep.two_s(), 0.0, 0};
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const PhasePoint& p = pts[k];
      const double boltz_cl = std::exp(-beta * classical_hamiltonian(spec, p));
      ScanRow row;
      row.two_s = rep.two_s();
      row.beta = beta;
      row.point = p;
      row.quantum_scaled = sg.scaled_symbol(beta, p);
      row.classical = boltz_cl / report.z_classical;
      row.abs_error = std::abs(row.quantum_scaled - row.classical);
      row.unnormalized_error = std::abs(sg.boltzmann_symbol(beta, p) - boltz_cl);
      row.bound = bound;
      if (row.abs_error > summary.sup_error) {
        summary.sup_error = row.abs_error;
        summary.argmax = k;
      }
      report.rows.push_back(std::move(row));
    }
    report.summaries.push_back(summary);
  }
  return report;
}

}  // namespace spinlimit
