#pragma once

/**
 * @file spinwalks.hpp
 * @brief Spin walks and the walk expansion of single-site monomial symbols.
 *
 * A spin walk is a sequence of levels (a_0, ..., a_n) with a_0 = a_n = 0,
 * a_l >= 0 and |a_l - a_{l-1}| <= 1. Level a corresponds to the basis state
 * m = s - a. For a monomial M = s_hat_{i1} ... s_hat_{in} the covariant symbol is
 *
 *   g(M)(Omega) = sum_w N(w) prod_l s_{i_l, delta(l)}(Omega),
 *
 * where delta(l) = a_l - a_{l-1} selects c3 (0), c_minus (-1) or c_plus (+1).
 */

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinlimit/errors.hpp"
#include "spinlimit/spincore.hpp"
#include "spinlimit/symbols.hpp"

namespace spinlimit {

class SpinWalk {
 public:
  /// Throws ValidationError unless the levels form a closed walk of length >= 1.
  explicit SpinWalk(std::vector<int> levels);

  const std::vector<int>& levels() const noexcept { return levels_; }
  int length() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  int max_level() const noexcept;
  /// delta(l) for l = 1..n.
  std::vector<int> steps() const;
  /// B(tau): number of flat steps at level tau.
  std::map<int, int> break_counts() const;
  /// T(sigma): number of up steps sigma -> sigma + 1 (each paired with a down step).
  std::map<int, int> pair_counts() const;
  int total_pairs() const;

  friend bool operator==(const SpinWalk&, const SpinWalk&) = default;

 private:
  std::vector<int> levels_;
};

/// All walks of length n in lexicographic level order. With @p two_s set, levels
/// are capped at 2s.
std::vector<SpinWalk> enumerate_walks(int n, std::optional<int> two_s = {});

/// Number of unbounded walks of length n (Motzkin numbers) by the three-term recurrence.
std::uint64_t motzkin_number(int n);

/// N(w) = s^{-n} prod (s - tau)^{B(tau)} prod ((2s - sigma)(sigma + 1))^{T(sigma)}.
/// Throws ValidationError when the walk rises above 2s.
Rational walk_weight(const SpinWalk& w, int two_s);

/// Coefficients of N(w) as a polynomial in u = 1/s (index k <-> u^k), valid for every s.
std::vector<Rational> walk_weight_polynomial(const SpinWalk& w);

/// Single-site monomial s_hat_{i1} ... s_hat_{in}.
class AxisMonomial {
 public:
  explicit AxisMonomial(std::vector<Axis> axes);

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  int degree() const noexcept { return static_cast<int>(axes_.size()); }
  /// Exponents (a, b, c) of x^a y^b z^c.
  std::array<int, 3> exponents() const noexcept;
  double classical(double theta, double phi) const;
  MultiIndexMonomial on_site(int site = 0) const;
  std::string str() const;

 private:
  std::vector<Axis> axes_;
};

class MonomialParseError : public ValidationError {
 public:
  MonomialParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// "x y x z" (or "1 2 1 3"). Throws MonomialParseError with the 0-based character offset.
AxisMonomial parse_axis_monomial(std::string_view text);

/// Site-qualified form "0x 1y". Throws MonomialParseError.
MultiIndexMonomial parse_site_monomial(std::string_view text);

/// True when any token carries a site prefix.
bool is_site_qualified(std::string_view text);

/// N(w) prod_l s_{i_l, delta(l)}(Omega).
cplx walk_contribution(const SpinWalk& w, const AxisMonomial& m, double theta, double phi,
                       int two_s);

/// Walk-assembled covariant symbol. Requires n <= 14.
cplx monomial_symbol_walks(const AxisMonomial& m, double theta, double phi, int two_s);

struct SemiclassicalCorrections {
  cplx c1;
  cplx c2;
  cplx c3;
  cplx total() const { return c1 + c2 + c3; }
};

SemiclassicalCorrections semiclassical_corrections(const AxisMonomial& m, double theta, double phi,
                                                   int two_s);

/// Coefficients of s^0, s^{-1}, ..., s^{-n} from symbols sampled at the given
/// spins (as 2s). Needs at least n + 1 distinct samples; more are fitted by least squares.
std::vector<cplx> laurent_coefficients(const AxisMonomial& m, double theta, double phi,
                                       const std::vector<int>& two_s_samples);

/// The same coefficients assembled from the exact weight polynomials.
std::vector<cplx> laurent_coefficients_exact(const AxisMonomial& m, double theta, double phi);

}  // namespace spinlimit
