#pragma once

/**
 * @file quadrature.hpp
 * @brief Product Gauss-Legendre x trapezoid rules on (S^2)^N and a Monte Carlo fallback.
 *
 * Rules integrate against the plain surface measure dOmega, so a single sphere
 * has total weight 4 pi and the N-fold product (4 pi)^N. A rule of degree L is
 * exact for every polynomial in (x, y, z) of total degree <= L on each sphere.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "spinlimit/spincore.hpp"

namespace spinlimit {

struct SphereNode {
  double theta = 0.0;
  double phi = 0.0;
  double weight = 0.0;
};

class SphereRule {
 public:
  /// Gauss-Legendre in u = cos(theta) with ceil((L+1)/2) nodes times a uniform
  /// trapezoid in phi with L+1 nodes. L must be >= 0.
  explicit SphereRule(int degree);

  int degree() const noexcept { return degree_; }
  int n_theta() const noexcept { return n_theta_; }
  int n_phi() const noexcept { return n_phi_; }
  const std::vector<SphereNode>& nodes() const noexcept { return nodes_; }
  double weight_sum() const;

 private:
  int degree_;
  int n_theta_;
  int n_phi_;
  std::vector<SphereNode> nodes_;
};

SphereRule sphere_rule(int degree);

using PhaseFunction = std::function<cplx(const PhasePoint&)>;

/// N-fold product of one SphereRule. Nodes are streamed, never materialized.
class ProductGrid {
 public:
  ProductGrid(SphereRule rule, int n_sites);

  const SphereRule& rule() const noexcept { return rule_; }
  int n_sites() const noexcept { return n_sites_; }
  std::size_t size() const noexcept;

  /// Visits every product node in lexicographic order (site 0 slowest).
  void for_each(const std::function<void(const PhasePoint&, double weight)>& visit) const;

 private:
  SphereRule rule_;
  int n_sites_;
};

/// Streaming pairwise summation with a fixed reduction order.
template <typename T>
class PairwiseSum {
 public:
  void add(const T& v) {
    block_ += v;
    if (++in_block_ == kBlock) flush_block();
  }
  T result() const {
    T total = block_;
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it)
      if (it->second) total = it->first + total;
    return total;
  }

 private:
  static constexpr int kBlock = 32;
  void flush_block() {
    T carry = block_;
    block_ = T{};
    in_block_ = 0;
    for (auto& level : levels_) {
      if (!level.second) {
        level = {carry, true};
        return;
      }
      carry = level.first + carry;
      level = {T{}, false};
    }
    levels_.emplace_back(carry, true);
  }
  T block_{};
  int in_block_ = 0;
  std::vector<std::pair<T, bool>> levels_;
};

cplx integrate(const SphereRule& rule, const PhaseFunction& f);
cplx integrate(const ProductGrid& grid, const PhaseFunction& f);

struct McEstimate {
  cplx value{};
  double std_error = 0.0;
  std::size_t n_samples = 0;
};

/// Uniform samples on (S^2)^N: u = cos(theta) uniform in [-1, 1], phi uniform.
/// Each sample carries weight (4 pi)^N / n_samples. Reproducible for a fixed seed.
class McSphereSampler {
 public:
  McSphereSampler(int n_sites, std::size_t n_samples, std::uint64_t seed);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t n_samples() const noexcept { return n_samples_; }
  double sample_weight() const noexcept;
  void for_each(const std::function<void(const PhasePoint&)>& visit) const;

 private:
  int n_sites_;
  std::size_t n_samples_;
  std::uint64_t seed_;
};

McEstimate mc_integrate(const McSphereSampler& sampler, const PhaseFunction& f);
McEstimate mc_sphere(int n_sites, std::size_t n_samples, std::uint64_t seed, const PhaseFunction& f);

}  // namespace spinlimit
