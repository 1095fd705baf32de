#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lsed/errors.hpp"

namespace lsed {

enum class GridSpacing { Uniform, Logarithmic };

/// Discretization of the frequency continuum on [omega_min, omega_max].
/// Modes sit at cell centers; each carries the width of its cell so that
/// sums over modes approximate integrals over the band.
struct FrequencyGrid {
  double omega_min = 0.0;
  double omega_max = 1.0;
  std::size_t n_modes = 1;
  GridSpacing spacing = GridSpacing::Uniform;

  void validate() const {
    if (!(omega_min >= 0.0 && omega_min < omega_max))
      throw ConfigError("FrequencyGrid: need 0 <= omega_min < omega_max");
    if (n_modes < 1) throw ConfigError("FrequencyGrid: need n_modes >= 1");
    if (spacing == GridSpacing::Logarithmic && omega_min <= 0.0)
      throw ConfigError("FrequencyGrid: logarithmic spacing needs omega_min > 0");
  }

  /// Cell edges, n_modes + 1 ascending values.
  std::vector<double> edges() const {
    validate();
    std::vector<double> e(n_modes + 1);
    if (spacing == GridSpacing::Uniform) {
      const double dw = (omega_max - omega_min) / static_cast<double>(n_modes);
      for (std::size_t i = 0; i <= n_modes; ++i)
        e[i] = omega_min + dw * static_cast<double>(i);
    } else {
      const double l0 = std::log(omega_min);
      const double dl = (std::log(omega_max) - l0) / static_cast<double>(n_modes);
      for (std::size_t i = 0; i <= n_modes; ++i)
        e[i] = std::exp(l0 + dl * static_cast<double>(i));
    }
    e.front() = omega_min;
    e.back() = omega_max;
    return e;
  }

  std::vector<double> mode_frequencies() const {
    const auto e = edges();
    std::vector<double> w(n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) w[i] = 0.5 * (e[i] + e[i + 1]);
    return w;
  }

  std::vector<double> mode_widths() const {
    const auto e = edges();
    std::vector<double> dw(n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) dw[i] = e[i + 1] - e[i];
    return dw;
  }
};

}  // namespace lsed
