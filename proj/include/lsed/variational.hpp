#pragma once

#include <cstdint>
#include <vector>

#include "lsed/amplitudes.hpp"
#include "lsed/constants.hpp"
#include "lsed/solver.hpp"

namespace lsed {

/// A direction of independent per-state phase perturbations; the entry for
/// the state under study is held at zero, since its phase is common to every
/// amplitude a_{alpha beta} and drops out.
struct PhaseVariation {
  Eigen::Index state = 0;
  std::vector<double> deltas;
};

struct ScanOptions {
  std::size_t ensemble = 100000;
  std::uint64_t seed = 0;
  double t = 0.0;
};

struct ScanPoint {
  double epsilon = 0.0;
  double deviation = 0.0;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  double loglog_slope = 0.0;      // fitted scaling exponent of |deviation| vs epsilon
  double mixing_curvature = 0.0;  // sum_l deltas_l^2 |x~_al|^2 (E_l - E_a)
};

/// Mean kinetic energy of state a with the phase-ensemble contraction
/// <conj(a_ab) a_ab'> = delta_bb' applied: (m/2) sum_b w_ab^2 |x~_ab|^2.
/// Time-independent; t is accepted for interface symmetry with the
/// Monte-Carlo variant.
double mean_kinetic(const ResponseMatrix& X, Eigen::Index state,
                    const RelevantAmplitudes& amplitudes, const PhysicalConstants& constants,
                    double t = 0.0);

/// Brute-force ensemble average of the same quantity over independently drawn
/// uniform state phases. Optionally reports the standard error of the mean.
double mean_kinetic_mc(const ResponseMatrix& X, Eigen::Index state,
                       const PhysicalConstants& constants, std::size_t draws, std::uint64_t seed,
                       double t = 0.0, double* std_error = nullptr);

/// Finite-ensemble evaluation of the mean-kinetic deviation under stochastic
/// phase perturbations phi_l -> phi_l + eps * deltas_l * eta (eta drawn per
/// ensemble member): the perturbed two-point contraction becomes
/// E[cos(eps deltas_b (eta - eta'))] on the diagonal, so the linear term in
/// eps vanishes and the deviation scales quadratically. The mixing curvature
/// reports the energy cost of the admixture the perturbation drives into the
/// other states, which is positive for the ground state.
ScanResult phase_variation_scan(const ResponseMatrix& X, Eigen::Index state,
                                const PhaseVariation& direction,
                                const std::vector<double>& epsilons,
                                const PhysicalConstants& constants, const ScanOptions& opts = {});

}  // namespace lsed
