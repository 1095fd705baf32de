#pragma once

#include <utility>
#include <vector>

#include "lsed/constants.hpp"
#include "lsed/field.hpp"
#include "lsed/solver.hpp"
#include "lsed/spectral.hpp"

namespace lsed {

struct RateReport {
  double W_ab_induced = 0.0;
  double W_em_induced = 0.0;
  double W_em_spontaneous = 0.0;
  double W_ab_spontaneous = 0.0;  // structurally zero
};

struct FrequencyResidual {
  double omega = 0.0;    // transition frequency magnitude
  double bracket = 0.0;  // -|w|^3 + (2 pi^2 c^3 / hbar) rho(|w|)
  double weight = 0.0;   // (2 e^2 / 3 c^3) |w| |x~|^2
};

struct BalanceResidual {
  std::vector<FrequencyResidual> per_frequency;
  double total = 0.0;  // sum of bracket * weight
};

/// First-order radiative displacement of state a at time t under the sampled
/// field, with the memory integral over sin(w_ab s) done in closed form per
/// cosine mode (adiabatic switching, principal value).
double radiative_correction(const ResponseMatrix& X, Eigen::Index state,
                            const FieldRealization& realization, double t);

/// Mean power absorbed by state a from the background,
///   -(4 pi^2 e^2 / 3 hbar) sum_b w_ab rho(|w_ab|) |x~_ab|^2.
double absorbed_power(const ResponseMatrix& X, Eigen::Index state, const SpectralModel& model);

/// Larmor power radiated from state a, (2 e^2 / 3 c^3) sum_b w_ab^4 |x~_ab|^2.
double larmor_power(const ResponseMatrix& X, Eigen::Index state, const PhysicalConstants& k);

/// Per-frequency detailed-balance brackets for the ground state; each entry
/// vanishes iff rho matches the vacuum density at that frequency.
BalanceResidual detailed_balance_residual(const ResponseMatrix& X, Eigen::Index state,
                                          const SpectralModel& model);

/// The spectral density that zeroes the detailed-balance bracket at each
/// frequency: rho(w) = hbar w^3 / (2 pi^2 c^3).
std::vector<double> solve_vacuum_spectrum(const std::vector<double>& frequencies,
                                          const PhysicalConstants& constants);

/// Equilibrium residual of an integral of motion xi:
///   sum_b [-(hbar / 2 pi^2 c^3) w_ab^3 + sign(w_ab) rho(|w_ab|)] (xi_a - xi_b) |x~_ab|^2.
double integral_of_motion_balance(const std::vector<double>& xi, const ResponseMatrix& X,
                                  Eigen::Index state, const SpectralModel& model);

/// Induced/spontaneous decomposition of the absorption and emission powers
/// for state a under rho = rho0 + rho_e.
RateReport transition_rates(const ResponseMatrix& X, Eigen::Index state,
                            const SpectralModel& model);

/// Spectral density balancing upward and downward transition rates between
/// levels separated by hbar omega at inverse temperature beta:
///   rho = rho0 + 2 rho0 / (exp(beta hbar omega) - 1) = rho0 coth(beta hbar omega / 2).
double equilibrium_spectrum(double omega, double beta, const PhysicalConstants& constants);

/// Einstein-balance residual for a two-level system:
///   exp(-beta E_lower) rho_e |x~|^2 - exp(-beta E_upper) (rho_e + 2 rho0) |x~|^2.
double two_level_equilibrium_check(const ResponseMatrix& X, double beta,
                                   const SpectralModel& model);

}  // namespace lsed
