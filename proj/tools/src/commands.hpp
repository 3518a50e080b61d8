#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinlimit/spincore.hpp"

namespace spinlimit::cli {

struct GlobalOptions {
  std::optional<std::string> out;
  std::optional<std::string> svg;
  std::uint64_t seed = 1;
  std::size_t dim_cap = kDefaultDimCap;
  std::optional<int> quad_degree;
};

struct WalksArgs {
  int n = 1;
  std::optional<int> two_s;
  bool count_only = false;
};

struct SymbolArgs {
  std::string monomial;
  /// One angle per site; empty draws a random point from the seed.
  std::vector<double> theta;
  std::vector<double> phi;
  int two_s = 1;
  std::string method = "auto";
};

struct DimerArgs {
  std::vector<double> beta{1.0};
  std::vector<int> two_s{2, 10, 40};
  int theta_steps = 181;
};

struct GibbsArgs {
  std::string spec_path;
  std::vector<double> beta{1.0};
  std::vector<int> two_s{2};
  std::string grid = "theta";
  int points = 181;
};

struct ContravariantArgs {
  int n = 1;
  int two_s = 1;
};

struct CommandOutput {
  std::string text;
  std::optional<std::string> svg;
  int exit_code = 0;
};

CommandOutput run_walks(const WalksArgs& args, const GlobalOptions& g);
CommandOutput run_symbol(const SymbolArgs& args, const GlobalOptions& g);
CommandOutput run_dimer(const DimerArgs& args, const GlobalOptions& g);
CommandOutput run_gibbs(const GibbsArgs& args, const GlobalOptions& g);
CommandOutput run_contravariant(const ContravariantArgs& args, const GlobalOptions& g);
/// Quick internal consistency checks; exit code 1 on any failure.
CommandOutput run_selftest(const GlobalOptions& g);

}  // namespace spinlimit::cli
