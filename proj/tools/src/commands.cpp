#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "output.hpp"
#include "spinlimit/dimer.hpp"
#include "spinlimit/errors.hpp"
#include "spinlimit/gibbs.hpp"
#include "spinlimit/quadrature.hpp"
#include "spinlimit/spinwalks.hpp"
#include "spinlimit/symbols.hpp"

namespace spinlimit::cli {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

ojson base_config(const std::string& subcommand, const GlobalOptions& g) {
  ojson c;
  c["subcommand"] = subcommand;
  c["seed"] = g.seed;
  c["dim_cap"] = g.dim_cap;
  c["quad_degree"] = g.quad_degree ? ojson(*g.quad_degree) : ojson(nullptr);
  c["out"] = g.out ? ojson(*g.out) : ojson(nullptr);
  c["svg"] = g.svg ? ojson(*g.svg) : ojson(nullptr);
  c["version"] = "0.1.0";
  return c;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string config_line(const ojson& c) { return "# config: " + c.dump() + "\n"; }

ojson complex_json(cplx z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

void reject_svg(const GlobalOptions& g, const char* cmd) {
  if (g.svg) throw ValidationError(std::string("--svg is not supported by '") + cmd + "'");
}

void require_two_s(int two_s) {
  if (two_s < 1) throw ValidationError("two_s must be >= 1, got " + std::to_string(two_s));
}

// Rational polynomial in 1/s as text, e.g. "2/s - (3/2)/s^2".
std::string weight_in_inverse_s(const std::vector<Rational>& poly) {
  std::string out;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Rational& c = poly[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    std::string coef = mag.str();
    const bool fraction = coef.find('/') != std::string::npos;
    std::string term;
    if (k == 0) {
      term = coef;
    } else {
      term = (fraction ? "(" + coef + ")" : coef) + "/s";
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::string levels_text(const SpinWalk& w) {
  std::string s;
  for (std::size_t i = 0; i < w.levels().size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w.levels()[i]);
  }
  return s;
}

std::vector<SphereAngles> resolve_point(const SymbolArgs& a, int n_sites, std::uint64_t seed) {
  if (a.theta.empty() != a.phi.empty()) {
    throw ValidationError("--theta and --phi must be given together");
  }
  if (a.theta.empty()) {
    std::vector<SphereAngles> out;
    McSphereSampler(n_sites, 1, seed).for_each([&](const PhasePoint& p) { out = p.all_angles(); });
    return out;
  }
  if (static_cast<int>(a.theta.size()) != n_sites || static_cast<int>(a.phi.size()) != n_sites) {
    throw ValidationError("expected " + std::to_string(n_sites) + " value(s) for --theta and --phi");
  }
  std::vector<SphereAngles> out;
  for (int k = 0; k < n_sites; ++k) out.push_back({a.theta[k], a.phi[k]});
  return out;
}

}  // namespace

CommandOutput run_walks(const WalksArgs& a, const GlobalOptions& g) {
  reject_svg(g, "walks");
  if (a.two_s) require_two_s(*a.two_s);
  ojson c = base_config("walks", g);
  c["n"] = a.n;
  c["two_s"] = a.two_s ? ojson(*a.two_s) : ojson(nullptr);
  c["count_only"] = a.count_only;
  const auto walks = enumerate_walks(a.n, a.two_s);

  std::ostringstream o;
  o << config_line(c);
  o << "# count: " << walks.size() << "\n";
  if (a.count_only) return {o.str(), {}, 0};
  o << "index,levels,weight\n";
  for (std::size_t i = 0; i < walks.size(); ++i) {
    const auto& w = walks[i];
    o << i << ',' << levels_text(w) << ',';
    if (a.two_s) {
      o << walk_weight(w, *a.two_s).str();
    } else {
      o << weight_in_inverse_s(walk_weight_polynomial(w));
    }
    o << '\n';
  }
  return {o.str(), {}, 0};
}

CommandOutput run_symbol(const SymbolArgs& a, const GlobalOptions& g) {
  reject_svg(g, "symbol");
  require_two_s(a.two_s);
  const bool sited = is_site_qualified(a.monomial);
  std::string method = a.method;
  if (method == "auto") method = sited ? "direct" : "walks";
  if (method != "walks" && method != "direct" && method != "corrections") {
    throw ValidationError("unknown method '" + a.method + "' (walks, direct, corrections)");
  }
  if (sited && method != "direct") {
    throw ValidationError("site-qualified monomials are evaluated with --method direct");
  }

  ojson result;
  cplx value;
  double classical = 0.0;
  std::vector<SphereAngles> angles;
  std::string canonical;
  if (sited) {
    const MultiIndexMonomial m = parse_site_monomial(a.monomial);
    const int n_sites = m.min_sites();
    angles = resolve_point(a, n_sites, g.seed);
    const PhasePoint p(angles);
    const SpinRep rep(a.two_s, n_sites, g.dim_cap);
    value = monomial_symbol_direct(m, p, rep);
    classical = m.classical(p);
    angles = p.all_angles();
  } else {
    const AxisMonomial m = parse_axis_monomial(a.monomial);
    angles = resolve_point(a, 1, g.seed);
    const PhasePoint p(angles);
    angles = p.all_angles();
    const double t = angles[0].theta, ph = angles[0].phi;
    canonical = m.str();
    if (method == "direct") {
      value = monomial_symbol_direct(m.on_site(), p, SpinRep(a.two_s, 1, g.dim_cap));
    } else {
      value = monomial_symbol_walks(m, t, ph, a.two_s);
    }
    classical = m.classical(t, ph);
    if (method == "corrections") {
      const auto corr = semiclassical_corrections(m, t, ph, a.two_s);
      result["corrections"] = ojson{{"c1", complex_json(corr.c1)},
                                    {"c2", complex_json(corr.c2)},
                                    {"c3", complex_json(corr.c3)},
                                    {"total", complex_json(corr.total())}};
      result["first_order_value"] = complex_json(classical + corr.total());
      result["first_order_residual"] = std::abs(value - (classical + corr.total()));
    }
  }

  ojson c = base_config("symbol", g);
  c["monomial"] = a.monomial;
  c["method"] = method;
  c["two_s"] = a.two_s;
  c["theta"] = ojson::array();
  c["phi"] = ojson::array();
  for (const auto& an : angles) {
    c["theta"].push_back(an.theta);
    c["phi"].push_back(an.phi);
  }

  ojson doc;
  doc["config"] = c;
  doc["monomial"] = sited ? a.monomial : canonical;
  doc["method"] = method;
  doc["two_s"] = a.two_s;
  doc["s"] = 0.5 * a.two_s;
  doc["value"] = complex_json(value);
  doc["classical"] = classical;
  doc["abs_difference"] = std::abs(value - classical);
  doc["bound"] = static_cast<double>(sited ? parse_site_monomial(a.monomial).degree()
                                           : parse_axis_monomial(a.monomial).degree()) /
                 std::sqrt(static_cast<double>(a.two_s));
  for (auto it = result.begin(); it != result.end(); ++it) doc[it.key()] = it.value();
  return {doc.dump(2) + "\n", {}, 0};
}

CommandOutput run_dimer(const DimerArgs& a, const GlobalOptions& g) {
  if (a.beta.empty()) throw ValidationError("--beta needs at least one value");
  if (a.two_s.empty()) throw ValidationError("--two-s needs at least one value");
  if (a.theta_steps < 2) throw ValidationError("--theta-steps must be >= 2");
  for (int t : a.two_s) require_two_s(t);
  for (double b : a.beta)
    if (!std::isfinite(b) || b < 0) throw ValidationError("--beta values must be finite and >= 0");

  ojson c = base_config("dimer", g);
  c["beta"] = a.beta;
  c["two_s"] = a.two_s;
  c["theta_steps"] = a.theta_steps;

  std::ostringstream rows;
  std::ostringstream summary;
  std::vector<Series> series;
  for (double beta : a.beta) {
    for (int two_s : a.two_s) {
      Series s{"beta=" + short_num(beta) + ", s=" + num(0.5 * two_s), {}, false};
      double sup = -1.0, at = 0.0;
      for (int k = 0; k < a.theta_steps; ++k) {
        const double theta = k == a.theta_steps - 1 ? kPi : kPi * k / (a.theta_steps - 1);
        const double q = dimer_symbol_closed(two_s, beta, theta);
        const double cl = dimer_classical(beta, theta);
        const double err = std::abs(q - cl);
        rows << num(theta) << ',' << two_s << ',' << num(beta) << ',' << num(q) << ',' << num(cl)
             << ',' << num(err) << '\n';
        s.points.emplace_back(theta * 180.0 / kPi, q);
        if (err > sup) sup = err, at = theta;
      }
      summary << "# sup_error beta=" << num(beta) << " two_s=" << two_s << ": " << num(sup)
              << " at theta=" << num(at) << '\n';
      series.push_back(std::move(s));
    }
    Series cl{"classical, beta=" + short_num(beta), {}, true};
    for (int k = 0; k < a.theta_steps; ++k) {
      const double theta = k == a.theta_steps - 1 ? kPi : kPi * k / (a.theta_steps - 1);
      cl.points.emplace_back(theta * 180.0 / kPi, dimer_classical(beta, theta));
    }
    series.push_back(std::move(cl));
  }

  CommandOutput out;
  out.text = config_line(c) + summary.str() + "theta,two_s,beta,closed_form,classical,abs_error\n" +
             rows.str();
  if (g.svg) {
    std::string betas;
    for (double b : a.beta) betas += (betas.empty() ? "" : ", ") + short_num(b);
    out.svg = svg_line_chart({"Scaled dimer Gibbs symbol, beta = " + betas,
                              "angle between spins theta (degrees)",
                              "(2s+1)^2 g(G) vs classical density", "config: " + c.dump()},
                             series);
  }
  return out;
}

CommandOutput run_gibbs(const GibbsArgs& a, const GlobalOptions& g) {
  reject_svg(g, "gibbs");
  std::ifstream probe(a.spec_path);
  if (!probe) throw ValidationError("cannot read Hamiltonian spec '" + a.spec_path + "'");
  const HamiltonianSpec spec = load_hamiltonian(a.spec_path);
  if (a.beta.empty()) throw ValidationError("--beta needs at least one value");
  if (a.two_s.empty()) throw ValidationError("--two-s needs at least one value");
  for (int t : a.two_s) require_two_s(t);
  ScanGrid grid;
  if (a.grid == "theta") {
    grid.kind = ScanGrid::Kind::Theta;
  } else if (a.grid == "random") {
    grid.kind = ScanGrid::Kind::Random;
  } else {
    throw ValidationError("unknown grid '" + a.grid + "' (theta, random)");
  }
  grid.n_points = a.points;
  grid.seed = g.seed;
  // Fail on the cap before any diagonalization.
  for (int t : a.two_s) SpinRep(t, spec.n_sites(), g.dim_cap);

  ClassicalPartitionOptions cpo;
  cpo.quadrature_degree = g.quad_degree;
  cpo.seed = g.seed;

  ojson c = base_config("gibbs", g);
  c["spec_path"] = a.spec_path;
  c["spec"] = ojson::parse(spec.to_json());
  c["beta"] = a.beta;
  c["two_s"] = a.two_s;
  c["grid"] = a.grid;
  c["points"] = a.points;

  std::ostringstream head, rows;
  for (double beta : a.beta) {
    const ScanReport r = convergence_scan(spec, beta, a.two_s, grid, g.dim_cap, cpo);
    head << "# z_classical beta=" << num(beta) << ": " << num(r.z_classical) << '\n';
    for (const auto& s : r.summaries) {
      head << "# sup_error beta=" << num(beta) << " two_s=" << s.two_s << ": " << num(s.sup_error)
           << " at point " << s.argmax << '\n';
    }
    for (const auto& row : r.rows) {
      rows << row.two_s << ',' << num(row.beta);
      for (const auto& an : row.point.all_angles()) rows << ',' << num(an.theta) << ',' << num(an.phi);
      rows << ',' << num(row.quantum_scaled) << ',' << num(row.classical) << ',' << num(row.abs_error)
           << ',' << num(row.unnormalized_error) << ',' << num(row.bound) << '\n';
    }
  }
  std::string header = "two_s,beta";
  for (int k = 0; k < spec.n_sites(); ++k) {
    header += ",theta_" + std::to_string(k) + ",phi_" + std::to_string(k);
  }
  header += ",quantum_scaled,classical,abs_error,unnormalized_error,bound\n";
  return {config_line(c) + head.str() + header + rows.str(), {}, 0};
}

CommandOutput run_contravariant(const ContravariantArgs& a, const GlobalOptions& g) {
  reject_svg(g, "contravariant");
  require_two_s(a.two_s);
  const auto coeffs = a_zn_coefficients(a.n, a.two_s);

  ojson c = base_config("contravariant", g);
  c["n"] = a.n;
  c["two_s"] = a.two_s;

  ojson doc;
  doc["config"] = c;
  doc["n"] = a.n;
  doc["two_s"] = a.two_s;
  doc["coefficients"] = ojson::array();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    doc["coefficients"].push_back(ojson{{"k", it->first}, {"a", it->second.str()}});
  }
  if (a.n <= 4) {
    const SpinRep rep(a.two_s, 1, g.dim_cap);
    const int n = a.n;
    const Operator quad = contravariant_matrix(
        {[n](const PhasePoint& p) { return cplx(std::pow(p.cartesian(0)[2], n)); }, n, g.quad_degree},
        rep);
    doc["quadrature_degree"] = g.quad_degree ? *g.quad_degree : required_degree(rep, n);
    doc["residual"] = max_entry_norm(quad.matrix() - a_zn_operator(n, rep).matrix());
  } else {
    doc["quadrature_degree"] = nullptr;
    doc["residual"] = nullptr;
  }
  return {doc.dump(2) + "\n", {}, 0};
}

CommandOutput run_selftest(const GlobalOptions& g) {
  reject_svg(g, "selftest");
  std::ostringstream o;
  int failures = 0;
  const auto report = [&](const std::string& name, bool ok, double metric) {
    if (!ok) ++failures;
    o << (ok ? "PASS " : "FAIL ") << name << ' ' << num(metric) << '\n';
  };

  {
    const std::size_t expected[10] = {1, 2, 4, 9, 21, 51, 127, 323, 835, 2188};
    bool ok = true;
    for (int n = 1; n <= 10; ++n) ok = ok && enumerate_walks(n).size() == expected[n - 1];
    report("walk_counts", ok, 0.0);
  }
  {
    double worst = 0.0;
    McSphereSampler sampler(1, 12, g.seed);
    int k = 0;
    sampler.for_each([&](const PhasePoint& p) {
      const int two_s = 1 + k % 5;
      std::vector<Axis> axes;
      for (int j = 0; j <= k % 5; ++j) axes.push_back(static_cast<Axis>(1 + (k + j) % 3));
      const AxisMonomial m(axes);
      const auto& an = p.angles(0);
      worst = std::max(worst, std::abs(monomial_symbol_walks(m, an.theta, an.phi, two_s) -
                                       monomial_symbol_direct(m.on_site(), p, SpinRep(two_s))));
      ++k;
    });
    report("walks_vs_direct", worst <= 1e-12, worst);
  }
  {
    double worst = 0.0;
    const auto spec = heisenberg_dimer();
    for (int two_s = 1; two_s <= 3; ++two_s) {
      const SpectralGibbs sg(spec, SpinRep(two_s, 2, g.dim_cap));
      for (int k = 0; k <= 6; ++k) {
        const double theta = kPi * k / 6.0;
        worst = std::max(worst, std::abs(dimer_symbol_closed(two_s, 1.0, theta) -
                                         sg.scaled_symbol(1.0, PhasePoint({{0, 0}, {theta, 0}}))));
      }
    }
    report("dimer_closed_form", worst <= 1e-9, worst);
  }
  {
    double worst = 0.0;
    for (int two_s = 1; two_s <= 4; ++two_s) {
      worst = std::max(worst, completeness_defect(SpinRep(two_s), 2 * two_s));
    }
    report("completeness", worst <= 1e-12, worst);
  }
  {
    double worst = 0.0;
    for (int two_s = 1; two_s <= 3; ++two_s)
      for (int n = 1; n <= 4; ++n) {
        const SpinRep rep(two_s);
        const Operator q = contravariant_matrix(
            {[n](const PhasePoint& p) { return cplx(std::pow(p.cartesian(0)[2], n)); }, n, {}}, rep);
        worst = std::max(worst, max_entry_norm(q.matrix() - a_zn_operator(n, rep).matrix()));
      }
    report("contravariant_zn", worst <= 1e-10, worst);
  }
  o << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return {o.str(), {}, failures == 0 ? 0 : 1};
}

}  // namespace spinlimit::cli
