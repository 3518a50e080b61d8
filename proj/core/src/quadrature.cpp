#include "spinlimit/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

#include "spinlimit/errors.hpp"

namespace spinlimit {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl;
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  // zeros holds the nonnegative roots in ascending order.
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    const double x = *it;
    const double dp = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes.push_back(x);
    gl.weights.push_back(w);
    if (x != 0.0) {
      gl.nodes.insert(gl.nodes.begin(), -x);
      gl.weights.insert(gl.weights.begin(), w);
    }
  }
  return gl;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SphereRule::SphereRule(int degree) : degree_(degree) {
  if (degree < 0) throw ValidationError("quadrature degree must be >= 0");
  n_theta_ = (degree + 2) / 2;
  n_phi_ = degree + 1;
  const GaussLegendre gl = gauss_legendre(n_theta_);
  const double dphi = 2.0 * std::numbers::pi / n_phi_;
  nodes_.reserve(static_cast<std::size_t>(n_theta_) * static_cast<std::size_t>(n_phi_));
  for (int i = 0; i < n_theta_; ++i) {
    const double theta = std::acos(gl.nodes[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n_phi_; ++j) {
      nodes_.push_back({theta, j * dphi, gl.weights[static_cast<std::size_t>(i)] * dphi});
    }
  }
}

double SphereRule::weight_sum() const {
  PairwiseSum<double> sum;
  for (const auto& n : nodes_) sum.add(n.weight);
  return sum.result();
}

SphereRule sphere_rule(int degree) { return SphereRule(degree); }

ProductGrid::ProductGrid(SphereRule rule, int n_sites) : rule_(std::move(rule)), n_sites_(n_sites) {
  if (n_sites < 1) throw ValidationError("product grid needs at least one site");
}

std::size_t ProductGrid::size() const noexcept {
  std::size_t n = 1;
  for (int i = 0; i < n_sites_; ++i) n *= rule_.nodes().size();
  return n;
}

void ProductGrid::for_each(const std::function<void(const PhasePoint&, double)>& visit) const {
  const auto& nodes = rule_.nodes();
  const std::size_t m = nodes.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(n_sites_), 0);
  std::vector<SphereAngles> angles(static_cast<std::size_t>(n_sites_));
  while (true) {
    double w = 1.0;
    for (std::size_t mu = 0; mu < idx.size(); ++mu) {
      const auto& nd = nodes[idx[mu]];
      angles[mu] = {nd.theta, nd.phi};
      w *= nd.weight;
    }
    visit(PhasePoint(angles), w);
    std::size_t mu = idx.size();
    while (mu > 0) {
      --mu;
      if (++idx[mu] < m) break;
      idx[mu] = 0;
      if (mu == 0) return;
    }
  }
}

cplx integrate(const SphereRule& rule, const PhaseFunction& f) {
  return integrate(ProductGrid(rule, 1), f);
}

cplx integrate(const ProductGrid& grid, const PhaseFunction& f) {
  PairwiseSum<cplx> sum;
  grid.for_each([&](const PhasePoint& p, double w) { sum.add(w * f(p)); });
  return sum.result();
}

McSphereSampler::McSphereSampler(int n_sites, std::size_t n_samples, std::uint64_t seed)
    : n_sites_(n_sites), n_samples_(n_samples), seed_(seed) {
  if (n_sites < 1) throw ValidationError("Monte Carlo sampler needs at least one site");
  if (n_samples < 1) throw ValidationError("Monte Carlo sampler needs at least one sample");
}

double McSphereSampler::sample_weight() const noexcept {
  return std::pow(kFourPi, n_sites_) / static_cast<double>(n_samples_);
}

void McSphereSampler::for_each(const std::function<void(const PhasePoint&)>& visit) const {
  std::mt19937_64 rng(seed_);
  std::vector<SphereAngles> angles(static_cast<std::size_t>(n_sites_));
  for (std::size_t k = 0; k < n_samples_; ++k) {
    for (auto& a : angles) {
      const double u = 2.0 * uniform01(rng) - 1.0;
      a.theta = std::acos(u);
      a.phi = 2.0 * std::numbers::pi * uniform01(rng);
    }
    visit(PhasePoint(angles));
  }
}

McEstimate mc_integrate(const McSphereSampler& sampler, const PhaseFunction& f) {
  PairwiseSum<cplx> sum;
  PairwiseSum<double> sum_sq;
  sampler.for_each([&](const PhasePoint& p) {
    const cplx v = f(p);
    sum.add(v);
    sum_sq.add(std::norm(v));
  });
  const auto n = static_cast<double>(sampler.n_samples());
  const double volume = std::pow(kFourPi, sampler.n_sites());
  const cplx mean = sum.result() / n;
  McEstimate est;
  est.n_samples = sampler.n_samples();
  est.value = volume * mean;
  if (sampler.n_samples() > 1) {
    const double var = std::max(0.0, (sum_sq.result() - n * std::norm(mean)) / (n - 1.0));
    est.std_error = volume * std::sqrt(var / n);
  }
  return est;
}

McEstimate mc_sphere(int n_sites, std::size_t n_samples, std::uint64_t seed, const PhaseFunction& f) {
  return mc_integrate(McSphereSampler(n_sites, n_samples, seed), f);
}

}  // namespace spinlimit
