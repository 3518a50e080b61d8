#include "spinlimit/spinwalks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "spinlimit/quadrature.hpp"

namespace spinlimit {

namespace {

constexpr int kMaxWalkLength = 14;

struct Token {
  std::string_view text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.push_back({text.substr(start, i - start), start});
  }
  return out;
}

std::optional<Axis> axis_from_char(char c) {
  switch (c) {
    case 'x': case 'X': case '1': return Axis::X;
    case 'y': case 'Y': case '2': return Axis::Y;
    case 'z': case 'Z': case '3': return Axis::Z;
    default: return std::nullopt;
  }
}

Rational rational_pow(const Rational& base, int e) {
  Rational r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void enumerate(int n, std::optional<int> cap, std::vector<int>& levels,
               std::vector<SpinWalk>& out) {
  const int pos = static_cast<int>(levels.size()) - 1;
  if (pos == n) {
    out.emplace_back(levels);
    return;
  }
  const int a = levels.back();
  const int remaining = n - pos - 1;
  for (int next = a - 1; next <= a + 1; ++next) {
    if (next < 0 || next > remaining) continue;
    if (cap && next > *cap) continue;
    levels.push_back(next);
    enumerate(n, cap, levels, out);
    levels.pop_back();
  }
}

cplx coefficient_product(const SpinWalk& w, const AxisMonomial& m, double theta, double phi) {
  const auto& axes = m.axes();
  std::array<RotatedCoeffs, 3> coeffs{rotated_coeffs(Axis::X, theta, phi),
                                      rotated_coeffs(Axis::Y, theta, phi),
                                      rotated_coeffs(Axis::Z, theta, phi)};
  const auto& lv = w.levels();
  cplx prod(1.0, 0.0);
  for (std::size_t l = 1; l < lv.size(); ++l) {
    prod *= coeffs[static_cast<std::size_t>(component(axes[l - 1]))].by_step(lv[l] - lv[l - 1]);
  }
  return prod;
}

void check_walk_length(const AxisMonomial& m) {
  if (m.degree() > kMaxWalkLength) {
    throw ValidationError("walk expansion supports monomials of degree <= " +
                          std::to_string(kMaxWalkLength));
  }
}

}  // namespace

SpinWalk::SpinWalk(std::vector<int> levels) : levels_(std::move(levels)) {
  if (levels_.size() < 2) throw ValidationError("a spin walk needs at least one step");
  if (levels_.front() != 0 || levels_.back() != 0) {
    throw ValidationError("a spin walk must start and end at level 0");
  }
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    if (levels_[l] < 0) throw ValidationError("spin walk levels must be nonnegative");
    if (l > 0 && std::abs(levels_[l] - levels_[l - 1]) > 1) {
      throw ValidationError("spin walk steps must lie in {-1, 0, +1}");
    }
  }
}

int SpinWalk::max_level() const noexcept { return *std::max_element(levels_.begin(), levels_.end()); }

std::vector<int> SpinWalk::steps() const {
  std::vector<int> d;
  for (std::size_t l = 1; l < levels_.size(); ++l) d.push_back(levels_[l] - levels_[l - 1]);
  return d;
}

std::map<int, int> SpinWalk::break_counts() const {
  std::map<int, int> b;
  for (std::size_t l = 1; l < levels_.size(); ++l)
    if (levels_[l] == levels_[l - 1]) ++b[levels_[l]];
  return b;
}

std::map<int, int> SpinWalk::pair_counts() const {
  std::map<int, int> t;
  for (std::size_t l = 1; l < levels_.size(); ++l)
    if (levels_[l] == levels_[l - 1] + 1) ++t[levels_[l - 1]];
  return t;
}

int SpinWalk::total_pairs() const {
  int n = 0;
  for (const auto& [sigma, count] : pair_counts()) n += count;
  return n;
}

std::vector<SpinWalk> enumerate_walks(int n, std::optional<int> two_s) {
  if (n < 1) throw ValidationError("walk length must be >= 1");
  if (n > kMaxWalkLength) {
    throw ValidationError("walk length must be <= " + std::to_string(kMaxWalkLength));
  }
  if (two_s && *two_s < 1) throw ValidationError("two_s must be >= 1");
  std::vector<SpinWalk> out;
  std::vector<int> levels{0};
  enumerate(n, two_s, levels, out);
  return out;
}

std::uint64_t motzkin_number(int n) {
  if (n < 0) throw ValidationError("n must be >= 0");
  // (n + 2) M_n = (2n + 1) M_{n-1} + 3(n - 1) M_{n-2}.
  std::uint64_t prev = 1, cur = 1;
  if (n == 0) return 1;
  for (int k = 2; k <= n; ++k) {
    const std::uint64_t next =
        ((2 * static_cast<std::uint64_t>(k) + 1) * cur + 3 * (static_cast<std::uint64_t>(k) - 1) * prev) /
        (static_cast<std::uint64_t>(k) + 2);
    prev = cur;
    cur = next;
  }
  return cur;
}

Rational walk_weight(const SpinWalk& w, int two_s) {
  if (two_s < 1) throw ValidationError("two_s must be >= 1");
  if (w.max_level() > two_s) {
    throw ValidationError("walk reaches level " + std::to_string(w.max_level()) +
                          " above 2s = " + std::to_string(two_s));
  }
  const Rational s(two_s, 2);
  Rational num = 1;
  for (const auto& [tau, b] : w.break_counts()) num *= rational_pow(s - tau, b);
  for (const auto& [sigma, t] : w.pair_counts()) {
    num *= rational_pow((2 * s - sigma) * (sigma + 1), t);
  }
  return num / rational_pow(s, w.length());
}

std::vector<Rational> walk_weight_polynomial(const SpinWalk& w) {
  // (s - tau)/s = 1 - tau u and (2s - sigma)(sigma + 1)/s^2 = (sigma + 1)(2u - sigma u^2).
  std::vector<Rational> poly{Rational(1)};
  for (const auto& [tau, b] : w.break_counts()) {
    for (int k = 0; k < b; ++k) poly = poly_mul(poly, {Rational(1), Rational(-tau)});
  }
  for (const auto& [sigma, t] : w.pair_counts()) {
    for (int k = 0; k < t; ++k) {
      poly = poly_mul(poly, {Rational(0), Rational(2 * (sigma + 1)), Rational(-sigma * (sigma + 1))});
    }
  }
  poly.resize(static_cast<std::size_t>(w.length()) + 1, Rational(0));
  return poly;
}

AxisMonomial::AxisMonomial(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw ValidationError("monomial needs at least one factor");
}

std::array<int, 3> AxisMonomial::exponents() const noexcept {
  std::array<int, 3> e{0, 0, 0};
  for (Axis a : axes_) ++e[static_cast<std::size_t>(component(a))];
  return e;
}

double AxisMonomial::classical(double theta, double phi) const {
  const Vec3 x = to_cartesian({theta, phi});
  double v = 1.0;
  for (Axis a : axes_) v *= x[static_cast<std::size_t>(component(a))];
  return v;
}

MultiIndexMonomial AxisMonomial::on_site(int site) const {
  std::vector<SiteAxis> f;
  for (Axis a : axes_) f.push_back({site, a});
  return MultiIndexMonomial(std::move(f));
}

std::string AxisMonomial::str() const {
  std::string out;
  for (Axis a : axes_) {
    if (!out.empty()) out += ' ';
    out += "xyz"[component(a)];
  }
  return out;
}

AxisMonomial parse_axis_monomial(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.empty()) throw MonomialParseError("empty monomial", 0);
  std::vector<Axis> axes;
  for (const auto& t : tokens) {
    const auto axis = t.text.size() == 1 ? axis_from_char(t.text[0]) : std::nullopt;
    if (!axis) {
      throw MonomialParseError("unknown axis token '" + std::string(t.text) + "'", t.pos);
    }
    axes.push_back(*axis);
  }
  return AxisMonomial(std::move(axes));
}

MultiIndexMonomial parse_site_monomial(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.empty()) throw MonomialParseError("empty monomial", 0);
  std::vector<SiteAxis> factors;
  for (const auto& t : tokens) {
    std::size_t k = 0;
    while (k < t.text.size() && std::isdigit(static_cast<unsigned char>(t.text[k]))) ++k;
    if (k == 0) throw MonomialParseError("expected a site index", t.pos);
    if (k > 6) throw MonomialParseError("site index too large", t.pos);
    if (k + 1 != t.text.size()) {
      throw MonomialParseError("expected one axis letter after the site index", t.pos + k);
    }
    const auto axis = axis_from_char(t.text[k]);
    if (!axis || std::isdigit(static_cast<unsigned char>(t.text[k]))) {
      throw MonomialParseError("unknown axis '" + std::string(1, t.text[k]) + "'", t.pos + k);
    }
    factors.push_back({std::stoi(std::string(t.text.substr(0, k))), *axis});
  }
  return MultiIndexMonomial(std::move(factors));
}

bool is_site_qualified(std::string_view text) {
  for (const auto& t : tokenize(text)) {
    if (t.text.size() >= 2 && std::isdigit(static_cast<unsigned char>(t.text[0]))) return true;
  }
  return false;
}

cplx walk_contribution(const SpinWalk& w, const AxisMonomial& m, double theta, double phi,
                       int two_s) {
  if (w.length() != m.degree()) throw ValidationError("walk length differs from monomial degree");
  return static_cast<double>(walk_weight(w, two_s)) * coefficient_product(w, m, theta, phi);
}

cplx monomial_symbol_walks(const AxisMonomial& m, double theta, double phi, int two_s) {
  check_walk_length(m);
  PairwiseSum<cplx> sum;
  for (const auto& w : enumerate_walks(m.degree(), two_s)) {
    sum.add(walk_contribution(w, m, theta, phi, two_s));
  }
  return sum.result();
}

SemiclassicalCorrections semiclassical_corrections(const AxisMonomial& m, double theta, double phi,
                                                   int two_s) {
  if (two_s < 1) throw ValidationError("two_s must be >= 1");
  const double s = 0.5 * two_s;
  const Vec3 x = to_cartesian({theta, phi});
  const auto& axes = m.axes();
  const int n = m.degree();
  const double mcl = m.classical(theta, phi);

  // Laplacian of x^a y^b z^c in three free variables.
  const auto e = m.exponents();
  double lap = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (e[i] < 2) continue;
    double term = e[i] * (e[i] - 1.0);
    for (std::size_t j = 0; j < 3; ++j) term *= std::pow(x[j], j == i ? e[j] - 2 : e[j]);
    lap += term;
  }

  // sum_{k<l} eps_{i_k i_l m} x_m prod_{r != k, l} x_{i_r}.
  double comm = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const int a = component(axes[static_cast<std::size_t>(k)]);
      const int b = component(axes[static_cast<std::size_t>(l)]);
      if (a == b) continue;
      const int c = 3 - a - b;
      const double eps = ((b - a + 3) % 3 == 1) ? 1.0 : -1.0;
      double rest = x[static_cast<std::size_t>(c)];
      for (int r = 0; r < n; ++r) {
        if (r != k && r != l) rest *= x[static_cast<std::size_t>(component(axes[static_cast<std::size_t>(r)]))];
      }
      comm += eps * rest;
    }
  }

  SemiclassicalCorrections out;
  out.c1 = -n * (n - 1.0) / (4.0 * s) * mcl;
  out.c2 = lap / (4.0 * s);
  out.c3 = cplx(0.0, comm / (2.0 * s));
  return out;
}

std::vector<cplx> laurent_coefficients(const AxisMonomial& m, double theta, double phi,
                                       const std::vector<int>& two_s_samples) {
  check_walk_length(m);
  const int n = m.degree();
  const std::set<int> distinct(two_s_samples.begin(), two_s_samples.end());
  if (static_cast<int>(distinct.size()) < n + 1) {
    throw ValidationError("Laurent fit needs at least " + std::to_string(n + 1) +
                          " distinct spin samples, got " + std::to_string(distinct.size()));
  }
  using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const auto rows = static_cast<Eigen::Index>(distinct.size());
  LMatrix v(rows, n + 1);
  LMatrix rhs(rows, 2);
  Eigen::Index r = 0;
  for (int two_s : distinct) {
    if (two_s < 1) throw ValidationError("two_s must be >= 1");
    const long double u = 2.0L / two_s;
    long double p = 1.0L;
    for (int k = 0; k <= n; ++k, p *= u) v(r, k) = p;
    const cplx g = monomial_symbol_walks(m, theta, phi, two_s);
    rhs(r, 0) = g.real();
    rhs(r, 1) = g.imag();
    ++r;
  }
  const LMatrix sol = v.colPivHouseholderQr().solve(rhs);
  std::vector<cplx> out;
  for (int k = 0; k <= n; ++k) {
    out.emplace_back(static_cast<double>(sol(k, 0)), static_cast<double>(sol(k, 1)));
  }
  return out;
}

std::vector<cplx> laurent_coefficients_exact(const AxisMonomial& m, double theta, double phi) {
  check_walk_length(m);
  const int n = m.degree();
  std::vector<PairwiseSum<cplx>> sums(static_cast<std::size_t>(n) + 1);
  for (const auto& w : enumerate_walks(n)) {
    const cplx prod = coefficient_product(w, m, theta, phi);
    const auto poly = walk_weight_polynomial(w);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (poly[k] != 0) sums[k].add(static_cast<double>(poly[k]) * prod);
    }
  }
  std::vector<cplx> out;
  for (const auto& s : sums) out.push_back(s.result());
  return out;
}

}  // namespace spinlimit
