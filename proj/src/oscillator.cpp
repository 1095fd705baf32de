#include "lsed/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "lsed/errors.hpp"
#include "lsed/oracle.hpp"

namespace lsed {

std::complex<double> response_amplitude(const OscillatorSpec& spec, double omega,
                                        double field_weight) {
  spec.validate();
  if (!(omega > 0.0)) throw std::domain_error("response_amplitude: omega must be positive");
  const auto& k = spec.constants;
  const std::complex<double> den(omega * omega - spec.omega0 * spec.omega0,
                                 k.tau * omega * omega * omega);
  return -(k.e_charge * field_weight / k.m) / den;
}

namespace {

// |x~(w)|^2 per unit squared field weight.
double response_mag2(const OscillatorSpec& spec, double omega) {
  const auto& k = spec.constants;
  const double dr = omega * omega - spec.omega0 * spec.omega0;
  const double di = k.tau * omega * omega * omega;
  return (k.e_charge * k.e_charge / (k.m * k.m)) / (dr * dr + di * di);
}

}  // namespace

StationaryMoments stationary_moments(const OscillatorSpec& spec, const SpectralModel& model,
                                     const FrequencyGrid& grid, const MomentOptions& opts) {
  spec.validate();
  grid.validate();
  const double w0 = spec.omega0;
  if (grid.omega_min > w0 / 10.0 || grid.omega_max < 20.0 * w0)
    throw AccuracyError(
        "stationary_moments: grid must span [omega0/10, >= 20 omega0]; widen the band");

  const double gamma = spec.linewidth();
  if (!opts.refine_near_resonance) {
    // Without refinement the caller grid itself must resolve the linewidth.
    const auto freqs = grid.mode_frequencies();
    std::size_t near = 0;
    for (double w : freqs)
      if (std::abs(w - w0) <= 5.0 * gamma) ++near;
    if (near < 50)
      throw AccuracyError(
          "stationary_moments: grid too coarse near resonance; need >= 50 nodes within "
          "+-5 tau omega0^2 of omega0 (spacing <= " +
          std::to_string(gamma / 5.0) + ")");
    return stationary_moments_on_grid(spec, model, grid);
  }

  const auto& k = spec.constants;
  auto x_integrand = [&](double w) { return response_mag2(spec, w) * power_spectrum(model, w); };
  auto p_integrand = [&](double w) { return k.m * k.m * w * w * x_integrand(w); };

  // Split the band at a geometric ladder of linewidths around the resonance
  // so the adaptive quadrature sees the Lorentzian peak.
  std::vector<double> cuts{grid.omega_min, grid.omega_max};
  for (double s : {1.0, 5.0, 25.0, 125.0, 625.0, 3125.0}) {
    for (double sign : {-1.0, 1.0}) {
      const double w = w0 + sign * s * gamma;
      if (w > grid.omega_min && w < grid.omega_max) cuts.push_back(w);
    }
  }
  cuts.push_back(w0);
  std::sort(cuts.begin(), cuts.end());

  double x2 = 0.0, p2 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-300) continue;
    x2 += quad_integrate(x_integrand, cuts[i], cuts[i + 1], opts.quad_tol * x_integrand(w0) *
                                                                gamma);
    p2 += quad_integrate(p_integrand, cuts[i], cuts[i + 1],
                         opts.quad_tol * p_integrand(w0) * gamma);
  }
  // Phase-average of a cosine mode contributes |x~|^2/2 per weight^2 = 2 S dw.
  return {x2, p2, std::sqrt(x2 * p2)};
}

StationaryMoments stationary_moments_on_grid(const OscillatorSpec& spec, const SpectralModel& model,
                                             const FrequencyGrid& grid) {
  spec.validate();
  const auto freqs = grid.mode_frequencies();
  const auto widths = grid.mode_widths();
  const auto& k = spec.constants;
  double x2 = 0.0, p2 = 0.0;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double contrib = response_mag2(spec, freqs[i]) * power_spectrum(model, freqs[i]) *
                           widths[i];
    x2 += contrib;
    p2 += k.m * k.m * freqs[i] * freqs[i] * contrib;
  }
  return {x2, p2, std::sqrt(x2 * p2)};
}

}  // namespace lsed
