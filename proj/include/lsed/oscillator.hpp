#pragma once

#include <complex>

#include "lsed/constants.hpp"
#include "lsed/grid.hpp"
#include "lsed/spectral.hpp"

namespace lsed {

struct OscillatorSpec {
  double omega0 = 1.0;
  PhysicalConstants constants;

  void validate() const {
    if (!(omega0 > 0.0)) throw ConfigError("OscillatorSpec: omega0 must be positive");
  }

  /// Radiative linewidth tau * omega0^2.
  double linewidth() const { return constants.tau * omega0 * omega0; }
};

struct StationaryMoments {
  double x2 = 0.0;
  double p2 = 0.0;
  double uncertainty_product = 0.0;  // sqrt(x2 * p2)
};

struct MomentOptions {
  bool refine_near_resonance = true;
  double quad_tol = 1e-9;
};

/// Linear response of the oscillator to one field mode of amplitude
/// field_weight at frequency omega:
///   x~ = -(e field_weight / m) / (omega^2 + i tau omega^3 - omega0^2).
std::complex<double> response_amplitude(const OscillatorSpec& spec, double omega,
                                        double field_weight);

/// Stationary second moments of the driven oscillator from the spectral
/// quadrature of |x~(w)|^2 S(w) over the grid band, with automatic
/// near-resonance refinement (the integrand is a near-Lorentzian of
/// relative width tau * omega0).
StationaryMoments stationary_moments(const OscillatorSpec& spec, const SpectralModel& model,
                                     const FrequencyGrid& grid, const MomentOptions& opts = {});

/// Same quadrature restricted to exactly the grid modes (no refinement);
/// this is the deterministic counterpart of a Monte-Carlo trajectory
/// ensemble driven by realizations sampled on the same grid.
StationaryMoments stationary_moments_on_grid(const OscillatorSpec& spec, const SpectralModel& model,
                                             const FrequencyGrid& grid);

}  // namespace lsed
