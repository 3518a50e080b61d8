#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "spinlimit/errors.hpp"
#include "spinlimit/gibbs.hpp"

namespace spinlimit {

namespace {

using nlohmann::json;

constexpr double kHermitianTol = 1e-12;

char axis_letter(Axis a) { return "xyz"[component(a)]; }

Axis parse_axis(const json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": 'axis' must be a string");
  const auto s = j.get<std::string>();
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw ValidationError(where + ": axis '" + s + "' is not one of x, y, z");
}

// Applies the product of local factors (rightmost first) to every column of m.
Matrix apply_factors(const std::vector<SiteAxis>& factors, const SpinMatrices& sm,
                     const SpinRep& rep, Matrix m, double scale) {
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const Matrix& local = sm.axis(it->axis).matrix();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Vector col = m.col(c);
      m.col(c) = apply_on_site(local, it->site, rep, col) * scale;
    }
  }
  return m;
}

Operator finish(Matrix h) {
  const double defect = max_entry_norm(h - h.adjoint());
  const double scale = std::max(1.0, max_entry_norm(h));
  if (defect <= kHermitianTol * scale) {
    h = (0.5 * (h + h.adjoint())).eval();
    return Operator(std::move(h), true);
  }
  return Operator(std::move(h));
}

void check_sites(const HamiltonianSpec& spec, const SpinRep& rep) {
  if (spec.n_sites() != rep.n_sites()) {
    throw ValidationError("Hamiltonian has " + std::to_string(spec.n_sites()) +
                          " sites, representation has " + std::to_string(rep.n_sites()));
  }
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(int n_sites, std::vector<CouplingTerm> terms)
    : n_sites_(n_sites), terms_(std::move(terms)) {
  if (n_sites < 1) throw ValidationError("n_sites must be >= 1");
  if (terms_.empty()) throw ValidationError("Hamiltonian needs at least one term");
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& term = terms_[t];
    if (term.factors.empty()) {
      throw ValidationError("term " + std::to_string(t) + ": empty factor list");
    }
    if (!std::isfinite(term.J)) {
      throw ValidationError("term " + std::to_string(t) + ": coupling J is not finite");
    }
    for (const auto& f : term.factors) {
      if (f.site < 0 || f.site >= n_sites) {
        throw ValidationError("term " + std::to_string(t) + ": site " + std::to_string(f.site) +
                              " out of range for n_sites = " + std::to_string(n_sites));
      }
    }
  }
}

int HamiltonianSpec::p() const noexcept {
  std::size_t p = 0;
  for (const auto& t : terms_) p = std::max(p, t.factors.size());
  return static_cast<int>(p);
}

double HamiltonianSpec::J_max() const noexcept {
  double j = 0.0;
  for (const auto& t : terms_) j = std::max(j, std::abs(t.J));
  return j;
}

std::string HamiltonianSpec::to_json() const {
  json doc;
  doc["n_sites"] = n_sites_;
  doc["terms"] = json::array();
  for (const auto& t : terms_) {
    json term;
    term["J"] = t.J;
    term["factors"] = json::array();
    for (const auto& f : t.factors) {
      term["factors"].push_back({{"site", f.site}, {"axis", std::string(1, axis_letter(f.axis))}});
    }
    doc["terms"].push_back(term);
  }
  return doc.dump();
}

HamiltonianSpec parse_hamiltonian(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("Hamiltonian JSON is malformed: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("Hamiltonian JSON must be an object");
  if (!doc.contains("n_sites")) throw ValidationError("Hamiltonian JSON: missing 'n_sites'");
  if (!doc["n_sites"].is_number_integer()) {
    throw ValidationError("Hamiltonian JSON: 'n_sites' must be an integer");
  }
  const int n_sites = doc["n_sites"].get<int>();
  if (n_sites < 1) throw ValidationError("Hamiltonian JSON: 'n_sites' must be >= 1");
  if (!doc.contains("terms")) throw ValidationError("Hamiltonian JSON: missing 'terms'");
  if (!doc["terms"].is_array()) throw ValidationError("Hamiltonian JSON: 'terms' must be an array");
  if (doc["terms"].empty()) throw ValidationError("Hamiltonian JSON: 'terms' is empty");

  std::vector<CouplingTerm> terms;
  std::size_t t = 0;
  for (const auto& jt : doc["terms"]) {
    const std::string where = "term " + std::to_string(t);
    if (!jt.is_object()) throw ValidationError(where + ": must be an object");
    if (!jt.contains("J") || !jt["J"].is_number()) {
      throw ValidationError(where + ": 'J' must be a number");
    }
    if (!jt.contains("factors") || !jt["factors"].is_array()) {
      throw ValidationError(where + ": 'factors' must be an array");
    }
    if (jt["factors"].empty()) throw ValidationError(where + ": empty factor list");
    CouplingTerm term;
    term.J = jt["J"].get<double>();
    std::size_t k = 0;
    for (const auto& jf : jt["factors"]) {
      const std::string fwhere = where + " factor " + std::to_string(k);
      if (!jf.is_object() || !jf.contains("site") || !jf.contains("axis")) {
        throw ValidationError(fwhere + ": needs 'site' and 'axis'");
      }
      if (!jf["site"].is_number_integer()) {
        throw ValidationError(fwhere + ": 'site' must be an integer");
      }
      const int site = jf["site"].get<int>();
      if (site < 0 || site >= n_sites) {
        throw ValidationError(fwhere + ": site " + std::to_string(site) +
                              " out of range for n_sites = " + std::to_string(n_sites));
      }
      term.factors.push_back({site, parse_axis(jf["axis"], fwhere)});
      ++k;
    }
    terms.push_back(std::move(term));
    ++t;
  }
  return HamiltonianSpec(n_sites, std::move(terms));
}

HamiltonianSpec load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read Hamiltonian file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hamiltonian(buf.str());
}

HamiltonianSpec heisenberg_dimer(double J) {
  std::vector<CouplingTerm> terms;
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) terms.push_back({J, {{0, a}, {1, a}}});
  return HamiltonianSpec(2, std::move(terms));
}

Operator quantum_hamiltonian(const HamiltonianSpec& spec, const SpinRep& rep) {
  check_sites(spec, rep);
  const SpinMatrices sm = make_spin_matrices(rep.single_site());
  const auto n = static_cast<Eigen::Index>(rep.dim());
  const double inv_s = 1.0 / rep.s();
  Matrix h = Matrix::Zero(n, n);
  for (const auto& term : spec.terms()) {
    h += term.J * apply_factors(term.factors, sm, rep, Matrix::Identity(n, n), inv_s);
  }
  return finish(std::move(h));
}

Operator quantum_hamiltonian_unscaled(const HamiltonianSpec& spec, const SpinRep& rep) {
  check_sites(spec, rep);
  const SpinMatrices sm = make_spin_matrices(rep.single_site());
  const auto n = static_cast<Eigen::Index>(rep.dim());
  Matrix h = Matrix::Zero(n, n);
  for (const auto& term : spec.terms()) {
    Matrix m = Matrix::Identity(n, n);
    for (const auto& f : term.factors) m = m * embed_site(sm.axis(f.axis), f.site, rep).matrix();
    h += (term.J / std::pow(rep.s(), static_cast<double>(term.factors.size()))) * m;
  }
  return finish(std::move(h));
}

double classical_hamiltonian(const HamiltonianSpec& spec, const PhasePoint& point) {
  if (point.n_sites() != static_cast<std::size_t>(spec.n_sites())) {
    throw ValidationError("phase point has " + std::to_string(point.n_sites()) +
                          " sites, Hamiltonian has " + std::to_string(spec.n_sites()));
  }
  double h = 0.0;
  for (const auto& term : spec.terms()) {
    double v = term.J;
    for (const auto& f : term.factors) v *= point.component(static_cast<std::size_t>(f.site), f.axis);
    h += v;
  }
  return h;
}

}  // namespace spinlimit
