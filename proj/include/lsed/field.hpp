#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lsed/grid.hpp"
#include "lsed/rng.hpp"
#include "lsed/spectral.hpp"

namespace lsed {

struct FieldMode {
  double omega = 0.0;
  double weight = 0.0;  // sqrt(2 S(w) dw), times a Rayleigh factor if enabled
  double phase = 0.0;   // radians in [-pi, pi)
};

/// One sampled realization of the random field,
///   E(t) = sum_k weight_k cos(w_k t + phi_k).
/// With weight_k = sqrt(2 S(w_k) dw_k) the phase-ensemble second moment
/// <E(t)E(t')> reproduces the discrete quadrature of the power-spectrum
/// cosine transform.
struct FieldRealization {
  std::vector<FieldMode> modes;
  std::uint64_t seed = 0;
  FrequencyGrid grid;
  SpectralModel spectrum;
};

namespace detail {
// stream ids for the counter RNG
inline constexpr std::uint64_t kPhaseStream = 1;
inline constexpr std::uint64_t kAmplitudeStream = 2;
}  // namespace detail

/// Draw one field realization. Phases are i.i.d. uniform on [-pi, pi), keyed
/// by (seed, mode index). The optional Rayleigh amplitude factor is the
/// free-field variant; the default unit-modulus amplitudes are the
/// equilibrium statistics.
inline FieldRealization sample_realization(const SpectralModel& model, const FrequencyGrid& grid,
                                           std::uint64_t seed, bool rayleigh_amplitudes = false) {
  grid.validate();
  const auto freqs = grid.mode_frequencies();
  const auto widths = grid.mode_widths();
  FieldRealization r;
  r.seed = seed;
  r.grid = grid;
  r.spectrum = model;
  r.modes.resize(grid.n_modes);
  for (std::size_t k = 0; k < grid.n_modes; ++k) {
    double w = std::sqrt(2.0 * power_spectrum(model, freqs[k]) * widths[k]);
    if (rayleigh_amplitudes) w *= rng::rayleigh_unit(seed, detail::kAmplitudeStream, k);
    r.modes[k] = {freqs[k], w, rng::phase(seed, detail::kPhaseStream, k)};
  }
  return r;
}

/// E(t) of a realization.
inline double evaluate_field(const FieldRealization& r, double t) {
  double e = 0.0;
  for (const auto& m : r.modes) e += m.weight * std::cos(m.omega * t + m.phase);
  return e;
}

/// dE/dt of a realization.
inline double evaluate_field_derivative(const FieldRealization& r, double t) {
  double e = 0.0;
  for (const auto& m : r.modes) e -= m.weight * m.omega * std::sin(m.omega * t + m.phase);
  return e;
}

/// Deterministic autocovariance quadrature sum_k S(w_k) dw_k cos(w_k lag),
/// the discrete stand-in for the integral of S(w) cos(w lag).
inline double autocovariance(const SpectralModel& model, const FrequencyGrid& grid, double lag) {
  grid.validate();
  const auto freqs = grid.mode_frequencies();
  const auto widths = grid.mode_widths();
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.n_modes; ++k)
    acc += power_spectrum(model, freqs[k]) * widths[k] * std::cos(freqs[k] * lag);
  return acc;
}

/// Quadrature pair (p, q) of a single field mode with mean energy hbar w / 2.
struct ModeQuadratures {
  double p = 0.0;
  double q = 0.0;
  double omega = 0.0;

  static ModeQuadratures from_phase(double omega, double phase, double hbar,
                                    double amplitude_modulus = 1.0) {
    const double energy = 0.5 * hbar * omega;
    ModeQuadratures mq;
    mq.omega = omega;
    mq.p = std::sqrt(2.0 * energy) * amplitude_modulus * std::cos(phase);
    mq.q = std::sqrt(2.0 * energy) * amplitude_modulus * std::sin(phase) / omega;
    return mq;
  }

  double energy() const { return 0.5 * (p * p + omega * omega * q * q); }
};

}  // namespace lsed
