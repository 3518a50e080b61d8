#pragma once

/**
 * @file gibbs.hpp
 * @brief Polynomial spin Hamiltonians, quantum and classical Gibbs states.
 *
 * Quantum Hamiltonians are built from the scaled operators s_hat = s_op / s.
 * The classical Hamiltonian replaces each s_hat_{mu,i} by the Cartesian
 * component Omega_{mu,i} of the unit vector on site mu.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinlimit/spincore.hpp"
#include "spinlimit/symbols.hpp"

namespace spinlimit {

struct CouplingTerm {
  double J = 0.0;
  std::vector<SiteAxis> factors;
};

class HamiltonianSpec {
 public:
  /// Validates sites (0 <= site < n_sites) and nonempty factor lists.
  HamiltonianSpec(int n_sites, std::vector<CouplingTerm> terms);

  int n_sites() const noexcept { return n_sites_; }
  const std::vector<CouplingTerm>& terms() const noexcept { return terms_; }

  /// Number of monomials, counted term by term without collecting.
  int L() const noexcept { return static_cast<int>(terms_.size()); }
  /// Largest monomial degree.
  int p() const noexcept;
  /// Largest |J|.
  double J_max() const noexcept;

  std::string to_json() const;

 private:
  int n_sites_;
  std::vector<CouplingTerm> terms_;
};

/// Parses {"n_sites": N, "terms": [{"J": c, "factors": [{"site": i, "axis": "x"}, ...]}, ...]}.
/// Every schema violation raises ValidationError with its own message.
HamiltonianSpec parse_hamiltonian(std::string_view json);
HamiltonianSpec load_hamiltonian(const std::string& path);

/// J (s1.s1 + s2.s2 + s3.s3) on two sites.
HamiltonianSpec heisenberg_dimer(double J = 1.0);

/// Dense H^(s) from scaled operators. Flagged Hermitian when H = H^dagger to rounding.
Operator quantum_hamiltonian(const HamiltonianSpec& spec, const SpinRep& rep);

/// Same operator assembled from unscaled spin matrices, each monomial divided by s^q.
Operator quantum_hamiltonian_unscaled(const HamiltonianSpec& spec, const SpinRep& rep);

double classical_hamiltonian(const HamiltonianSpec& spec, const PhasePoint& point);

struct GibbsResult {
  Operator W;
  double trace = 0.0;
  Operator G;
  double beta = 0.0;
  SpinRep rep;
};

GibbsResult gibbs_operator(const HamiltonianSpec& spec, const SpinRep& rep, double beta);
GibbsResult gibbs_operator(const HermitianEigen& spectrum, const SpinRep& rep, double beta);

/// Eigendecomposition of H^(s) reused across temperatures.
class SpectralGibbs {
 public:
  SpectralGibbs(const HamiltonianSpec& spec, const SpinRep& rep);

  const HermitianEigen& spectrum() const noexcept { return eig_; }
  const SpinRep& rep() const noexcept { return rep_; }

  /// log Tr e^{-beta H}.
  double log_trace(double beta) const;
  /// (2s+1)^{-N} Tr e^{-beta H}.
  double scaled_partition(double beta) const;
  /// Tr(G H).
  double thermal_expectation(double beta) const;
  /// <Omega| e^{-beta H} |Omega>.
  double boltzmann_symbol(double beta, const PhasePoint& point) const;
  /// (2s+1)^N <Omega|G|Omega>.
  double scaled_symbol(double beta, const PhasePoint& point) const;
  GibbsResult gibbs(double beta) const;

 private:
  SpinRep rep_;
  HermitianEigen eig_;
};

/// sum_{k<=n} (-beta)^k/k! H^k by Horner's rule.
Operator truncated_exponential(const Operator& h, double beta, int n);

/// g(W_n) for n = 0..n_max from the moments <Omega|H^k|Omega>.
std::vector<double> truncated_gibbs_symbols(const Operator& h, const SpinRep& rep, double beta,
                                            int n_max, const PhasePoint& point);

/// g(W_n) at a single n.
double truncated_gibbs_symbol(const HamiltonianSpec& spec, const SpinRep& rep, double beta, int n,
                              const PhasePoint& point);

/// sum_{k<=n} (-beta H_cl)^k / k!.
double classical_truncated(const HamiltonianSpec& spec, double beta, int n,
                           const PhasePoint& point);

struct ClassicalPartitionOptions {
  /// Per-site rule degree for N <= 2; defaults from beta L J.
  std::optional<int> quadrature_degree;
  std::size_t mc_samples = 200000;
  std::uint64_t seed = 1;
};

struct ClassicalPartition {
  double value = 0.0;
  double std_error = 0.0;
  bool monte_carlo = false;
  int quadrature_degree = 0;
};

/// (4 pi)^{-N} int e^{-beta H_cl} dOmega. Product rule for N <= 2, Monte Carlo otherwise.
ClassicalPartition classical_partition(const HamiltonianSpec& spec, double beta,
                                       const ClassicalPartitionOptions& opts = {});
int default_classical_degree(const HamiltonianSpec& spec, double beta);

double classical_gibbs_density(const HamiltonianSpec& spec, double beta, const PhasePoint& point,
                               double z_cl);

double scaled_gibbs_symbol(const HamiltonianSpec& spec, const SpinRep& rep, double beta,
                           const PhasePoint& point);
double scaled_partition(const HamiltonianSpec& spec, const SpinRep& rep, double beta);
double thermal_expectation(const HamiltonianSpec& spec, const SpinRep& rep, double beta);

/// beta L J p e^{beta L J} / sqrt(2s).
double convergence_bound(const HamiltonianSpec& spec, const SpinRep& rep, double beta);

struct ScanGrid {
  enum class Kind { Theta, Random };
  Kind kind = Kind::Theta;
  /// Theta: points from 0 to pi inclusive, site 0 at the north pole and site 1
  /// at (theta, 0). Random: uniform points on the product of spheres.
  int n_points = 181;
  std::uint64_t seed = 1;
};

std::vector<PhasePoint> scan_points(const ScanGrid& grid, int n_sites);

struct ScanRow {
  int two_s = 0;
  double beta = 0.0;
  PhasePoint point;
  double quantum_scaled = 0.0;
  double classical = 0.0;
  double abs_error = 0.0;
  /// |g(e^{-beta H}) - e^{-beta H_cl}|.
  double unnormalized_error = 0.0;
  double bound = 0.0;
};

struct ScanSummary {
  int two_s = 0;
  double sup_error = 0.0;
  std::size_t argmax = 0;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::vector<ScanSummary> summaries;
  double z_classical = 0.0;
  int n_points = 0;
};

ScanReport convergence_scan(const HamiltonianSpec& spec, double beta,
                            const std::vector<int>& two_s_list, const ScanGrid& grid,
                            std::size_t dim_cap = kDefaultDimCap,
                            const ClassicalPartitionOptions& classical = {});

}  // namespace spinlimit
