// spinlimit: command-line front end for the spinlimit library.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "output.hpp"
#include "spinlimit/errors.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace spinlimit::cli;

  CLI::App app{"Spin coherent states, symbols and classical limits of quantum Gibbs states"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::string out_path, svg_path;
  app.add_option("--out", out_path, "Write the primary output to this file instead of stdout");
  app.add_option("--svg", svg_path, "Write an SVG chart (dimer only)");
  app.add_option("--seed", g.seed, "Seed for random phase points")->capture_default_str();
  app.add_option("--dim-cap", g.dim_cap, "Maximum Hilbert space dimension")->capture_default_str();
  auto* quad = app.add_option("--quad-degree", "Quadrature degree override");

  WalksArgs walks;
  auto* walks_cmd = app.add_subcommand("walks", "Enumerate spin walks of length n");
  walks_cmd->add_option("--n", walks.n, "Walk length (1..14)")->required();
  auto* walks_two_s = walks_cmd->add_option("--two-s", "Twice the spin; bounds the walk height");
  walks_cmd->add_flag("--count-only", walks.count_only, "Print only the count");

  SymbolArgs symbol;
  auto* symbol_cmd = app.add_subcommand("symbol", "Covariant symbol of a spin monomial");
  symbol_cmd->add_option("monomial", symbol.monomial, "e.g. \"x y x z\" or \"0x 1y\"")->required();
  symbol_cmd->add_option("--theta", symbol.theta, "Polar angle per site")->delimiter(',');
  symbol_cmd->add_option("--phi", symbol.phi, "Azimuth per site")->delimiter(',');
  symbol_cmd->add_option("--two-s", symbol.two_s, "Twice the spin")->capture_default_str();
  symbol_cmd->add_option("--method", symbol.method, "walks, direct, corrections or auto")
      ->capture_default_str();

  DimerArgs dimer;
  auto* dimer_cmd = app.add_subcommand("dimer", "Closed-form Heisenberg dimer Gibbs symbols");
  dimer_cmd->add_option("--beta", dimer.beta, "Inverse temperatures")->delimiter(',');
  dimer_cmd->add_option("--two-s", dimer.two_s, "Twice the spin values")->delimiter(',');
  dimer_cmd->add_option("--theta-steps", dimer.theta_steps, "Grid points on [0, pi]")
      ->capture_default_str();

  GibbsArgs gibbs;
  auto* gibbs_cmd = app.add_subcommand("gibbs", "Quantum vs classical Gibbs convergence scan");
  gibbs_cmd->add_option("spec", gibbs.spec_path, "Hamiltonian JSON file")->required();
  gibbs_cmd->add_option("--beta", gibbs.beta, "Inverse temperatures")->delimiter(',');
  gibbs_cmd->add_option("--two-s", gibbs.two_s, "Twice the spin values")->delimiter(',');
  gibbs_cmd->add_option("--grid", gibbs.grid, "theta or random")->capture_default_str();
  gibbs_cmd->add_option("--points", gibbs.points, "Number of phase points")->capture_default_str();

  ContravariantArgs contra;
  auto* contra_cmd = app.add_subcommand("contravariant", "Coefficients of the contravariant z^n");
  contra_cmd->add_option("--n", contra.n, "Power of z (1..7)")->required();
  contra_cmd->add_option("--two-s", contra.two_s, "Twice the spin")->capture_default_str();

  auto* selftest_cmd = app.add_subcommand("selftest", "Run quick internal checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (!out_path.empty()) g.out = out_path;
    if (!svg_path.empty()) g.svg = svg_path;
    if (*quad) g.quad_degree = quad->as<int>();
    if (*walks_two_s) walks.two_s = walks_two_s->as<int>();

    CommandOutput result;
    if (*walks_cmd) {
      result = run_walks(walks, g);
    } else if (*symbol_cmd) {
      result = run_symbol(symbol, g);
    } else if (*dimer_cmd) {
      result = run_dimer(dimer, g);
    } else if (*gibbs_cmd) {
      result = run_gibbs(gibbs, g);
    } else if (*contra_cmd) {
      result = run_contravariant(contra, g);
    } else if (*selftest_cmd) {
      result = run_selftest(g);
    }
    write_output(g.out, result.text);
    if (result.svg) write_output(g.svg, *result.svg);
    return result.exit_code;
  } catch (const spinlimit::ResourceCapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const spinlimit::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
