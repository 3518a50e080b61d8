#pragma once

/**
 * @file dimer.hpp
 * @brief Closed-form results for the Heisenberg dimer H = s_hat_1 . s_hat_2.
 *
 * Total spin S = 0..2s has energy E_S = (S(S+1) - 2s(s+1)) / (2 s^2) with
 * degeneracy 2S+1. All functions take the spin as the integer 2s.
 */

#include <vector>

#include "spinlimit/spincore.hpp"

namespace spinlimit {

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention, all arguments doubled.
/// Returns 0 when a selection rule fails; throws ValidationError on parity mismatches
/// or negative spins.
double clebsch_gordan(int two_j1, int two_j2, int two_m1, int two_m2, int two_J, int two_M);

/// Dimer form with j1 = j2 = s.
double clebsch_gordan(int two_s, int two_m1, int two_m2, int two_S, int two_m);

/// Unitary whose columns are |S, M> (S = 0..2s ascending, M = S..-S) expanded in
/// the product basis. Limited to two_s <= 10.
Matrix coupled_basis(int two_s);

struct DimerLevel {
  int S = 0;
  double energy = 0.0;
  int degeneracy = 1;
};

std::vector<DimerLevel> dimer_spectrum(int two_s);

double dimer_log_partition(int two_s, double beta);
/// sum_S (2S+1) e^{-beta E_S}.
double dimer_partition(int two_s, double beta);

/// (2s+1)^2 <Omega_1, Omega_2| G |Omega_1, Omega_2> as a function of the angle
/// theta in [0, pi] between the two unit vectors.
double dimer_symbol_closed(int two_s, double beta, double theta);

/// beta e^{-beta cos theta} / sinh(beta); 1 at beta = 0.
double dimer_classical(double beta, double theta);

}  // namespace spinlimit
