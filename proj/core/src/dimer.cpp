#include "spinlimit/dimer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "spinlimit/errors.hpp"

namespace spinlimit {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial(int n) {
  cpp_int r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

// Neumaier-compensated sum of exp(x_i - max x).
struct LogSum {
  std::vector<double> terms;

  double log_value() const {
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    const double mx = *std::max_element(terms.begin(), terms.end());
    if (mx == -std::numeric_limits<double>::infinity()) return mx;
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
      const double v = std::exp(t - mx);
      const double next = sum + v;
      comp += std::abs(sum) >= std::abs(v) ? (sum - next) + v : (v - next) + sum;
      sum = next;
    }
    return mx + std::log(sum + comp);
  }
};

double log_or_neg_inf(double x) {
  return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

double level_exponent(int S, int two_s, double beta) {
  const double s = 0.5 * two_s;
  return -beta * (0.5 * S * (S + 1) - s * (s + 1)) / (s * s);
}

}  // namespace

double clebsch_gordan(int two_j1, int two_j2, int two_m1, int two_m2, int two_J, int two_M) {
  if (two_j1 < 0 || two_j2 < 0 || two_J < 0) {
    throw ValidationError("Clebsch-Gordan: spins must be nonnegative");
  }
  if (!same_parity(two_j1, two_m1) || !same_parity(two_j2, two_m2) ||
      !same_parity(two_J, two_M) || !same_parity(two_j1 + two_j2, two_J)) {
    throw ValidationError("Clebsch-Gordan: doubled arguments have inconsistent parity");
  }
  if (two_M != two_m1 + two_m2) return 0.0;
  if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_M) > two_J) {
    return 0.0;
  }
  if (two_J > two_j1 + two_j2 || two_J < std::abs(two_j1 - two_j2)) return 0.0;

  // Integer combinations; all doubled quantities of equal parity halve exactly.
  const int a = (two_j1 + two_j2 - two_J) / 2;
  const int b = (two_j1 - two_m1) / 2;
  const int c = (two_j2 + two_m2) / 2;
  const int d = (two_J - two_j2 + two_m1) / 2;
  const int e = (two_J - two_j1 - two_m2) / 2;

  cpp_rational sum = 0;
  const int k_min = std::max({0, -d, -e});
  const int k_max = std::min({a, b, c});
  for (int k = k_min; k <= k_max; ++k) {
    const cpp_int den = factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k) *
                        factorial(d + k) * factorial(e + k);
    const cpp_rational term(cpp_int(1), den);
    if (k % 2 == 0) sum += term; else sum -= term;
  }
  if (sum == 0) return 0.0;

  const cpp_int num = cpp_int(two_J + 1) * factorial((two_J + two_j1 - two_j2) / 2) *
                      factorial((two_J - two_j1 + two_j2) / 2) * factorial(a) *
                      factorial((two_J + two_M) / 2) * factorial((two_J - two_M) / 2) *
                      factorial((two_j1 - two_m1) / 2) * factorial((two_j1 + two_m1) / 2) *
                      factorial((two_j2 - two_m2) / 2) * factorial((two_j2 + two_m2) / 2);
  const cpp_rational squared = cpp_rational(num, factorial((two_j1 + two_j2 + two_J) / 2 + 1)) *
                               sum * sum;
  const double mag = std::sqrt(static_cast<double>(squared));
  return sum > 0 ? mag : -mag;
}

double clebsch_gordan(int two_s, int two_m1, int two_m2, int two_S, int two_m) {
  return clebsch_gordan(two_s, two_s, two_m1, two_m2, two_S, two_m);
}

Matrix coupled_basis(int two_s) {
  if (two_s < 1 || two_s > 10) throw ValidationError("coupled_basis supports 1 <= two_s <= 10");
  const int d = two_s + 1;
  Matrix basis = Matrix::Zero(d * d, d * d);
  int col = 0;
  for (int S = 0; S <= two_s; ++S) {
    for (int two_M = 2 * S; two_M >= -2 * S; two_M -= 2) {
      for (int k1 = 0; k1 < d; ++k1) {
        const int two_m1 = two_s - 2 * k1;
        const int two_m2 = two_M - two_m1;
        if (std::abs(two_m2) > two_s) continue;
        const int k2 = (two_s - two_m2) / 2;
        basis(k1 * d + k2, col) = clebsch_gordan(two_s, two_m1, two_m2, 2 * S, two_M);
      }
      ++col;
    }
  }
  return basis;
}

std::vector<DimerLevel> dimer_spectrum(int two_s) {
  if (two_s < 1) throw ValidationError("two_s must be >= 1");
  const double s = 0.5 * two_s;
  std::vector<DimerLevel> levels;
  for (int S = 0; S <= two_s; ++S) {
    levels.push_back({S, (S * (S + 1.0) - 2.0 * s * (s + 1.0)) / (2.0 * s * s), 2 * S + 1});
  }
  return levels;
}

double dimer_log_partition(int two_s, double beta) {
  if (two_s < 1) throw ValidationError("two_s must be >= 1");
  LogSum ls;
  for (int S = 0; S <= two_s; ++S) {
    ls.terms.push_back(std::log(2.0 * S + 1.0) + level_exponent(S, two_s, beta));
  }
  return ls.log_value();
}

double dimer_partition(int two_s, double beta) { return std::exp(dimer_log_partition(two_s, beta)); }

double dimer_symbol_closed(int two_s, double beta, double theta) {
  if (two_s < 1) throw ValidationError("two_s must be >= 1");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw ValidationError("dimer angle must lie in [0, pi]");
  }
  // Written in half-angle powers with k = s - m; this form has no tan(theta/2)
  // singularity, so theta = 0 and theta = pi need no special casing.
  const double ls = log_or_neg_inf(std::sin(0.5 * theta));
  const double lc = log_or_neg_inf(std::cos(0.5 * theta));
  const double lf2s = std::lgamma(two_s + 1.0);
  const auto lpow = [](double lx, int e) { return e == 0 ? 0.0 : e * lx; };
  LogSum ls_terms;
  for (int S = 0; S <= two_s; ++S) {
    const double pre = level_exponent(S, two_s, beta) + std::log(2.0 * S + 1.0) + 2.0 * lf2s -
                       std::lgamma(two_s - S + 1.0) - std::lgamma(two_s + S + 2.0);
    for (int k = 0; k <= S; ++k) {
      const double comb =
          std::lgamma(k + S + 1.0) - 2.0 * std::lgamma(k + 1.0) - std::lgamma(S - k + 1.0);
      ls_terms.terms.push_back(pre + comb + lpow(ls, 2 * two_s - 2 * k) + lpow(lc, 2 * k));
    }
  }
  const double log_value =
      2.0 * std::log(two_s + 1.0) + ls_terms.log_value() - dimer_log_partition(two_s, beta);
  return std::exp(log_value);
}

double dimer_classical(double beta, double theta) {
  if (beta == 0.0) return 1.0;
  return beta * std::exp(-beta * std::cos(theta)) / std::sinh(beta);
}

}  // namespace spinlimit
