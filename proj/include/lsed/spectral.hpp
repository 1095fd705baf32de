#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "lsed/constants.hpp"
#include "lsed/errors.hpp"

namespace lsed {

enum class SpectralKind { ZeroPoint, PlanckWithZeroPoint, RayleighJeans, Custom };

/// Parametric spectral energy density rho(omega) of the background radiation.
///
///   ZeroPoint            rho0 = hbar w^3 / (2 pi^2 c^3)
///   PlanckWithZeroPoint  rho0 + rho_e = rho0 * coth(beta hbar w / 2)
///   RayleighJeans        w^2 / (pi^2 c^3 beta)   (high-temperature limit)
///   Custom               linear interpolation of a sampled (w, rho) table
struct SpectralModel {
  SpectralKind kind = SpectralKind::ZeroPoint;
  PhysicalConstants constants;
  double beta = 0.0;  // inverse temperature, used by Planck and Rayleigh-Jeans kinds
  std::vector<std::pair<double, double>> custom_table;

  static SpectralModel zero_point(const PhysicalConstants& k) {
    return SpectralModel{SpectralKind::ZeroPoint, k, 0.0, {}};
  }
  static SpectralModel planck(const PhysicalConstants& k, double beta) {
    return SpectralModel{SpectralKind::PlanckWithZeroPoint, k, beta, {}};
  }
  static SpectralModel rayleigh_jeans(const PhysicalConstants& k, double beta) {
    return SpectralModel{SpectralKind::RayleighJeans, k, beta, {}};
  }
  static SpectralModel custom(const PhysicalConstants& k,
                              std::vector<std::pair<double, double>> table) {
    return SpectralModel{SpectralKind::Custom, k, 0.0, std::move(table)};
  }
};

/// Vacuum spectral density rho0(w) = hbar w^3 / (2 pi^2 c^3).
inline double zero_point_density(const PhysicalConstants& k, double omega) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return k.hbar * omega * omega * omega / (2.0 * pi2 * k.c * k.c * k.c);
}

/// Thermal part above the vacuum, rho_e = 2 rho0 / (exp(beta hbar w) - 1).
inline double planck_excess_density(const PhysicalConstants& k, double beta, double omega) {
  if (omega <= 0.0) return 0.0;
  const double x = beta * k.hbar * omega;
  return 2.0 * zero_point_density(k, omega) / std::expm1(x);
}

inline double spectral_density(const SpectralModel& model, double omega) {
  if (omega < 0.0) throw std::domain_error("spectral_density: omega must be >= 0");
  if (omega == 0.0) return 0.0;
  const PhysicalConstants& k = model.constants;
  switch (model.kind) {
    case SpectralKind::ZeroPoint:
      return zero_point_density(k, omega);
    case SpectralKind::PlanckWithZeroPoint:
      if (model.beta <= 0.0)
        throw ConfigError("spectral_density: Planck kind requires beta > 0");
      return zero_point_density(k, omega) + planck_excess_density(k, model.beta, omega);
    case SpectralKind::RayleighJeans: {
      if (model.beta <= 0.0)
        throw ConfigError("spectral_density: Rayleigh-Jeans kind requires beta > 0");
      constexpr double pi2 = std::numbers::pi * std::numbers::pi;
      return omega * omega / (pi2 * k.c * k.c * k.c * model.beta);
    }
    case SpectralKind::Custom: {
      const auto& tab = model.custom_table;
      if (tab.empty()) return 0.0;
      if (omega <= tab.front().first) return tab.front().second;
      if (omega >= tab.back().first) return tab.back().second;
      for (std::size_t i = 1; i < tab.size(); ++i) {
        if (omega <= tab[i].first) {
          const auto& [w0, r0] = tab[i - 1];
          const auto& [w1, r1] = tab[i];
          const double f = (omega - w0) / (w1 - w0);
          return r0 + f * (r1 - r0);
        }
      }
      return tab.back().second;
    }
  }
  return 0.0;
}

/// Power spectrum of the field, S(w) = (4 pi / 3) rho(w).
inline double power_spectrum(const SpectralModel& model, double omega) {
  return (4.0 * std::numbers::pi / 3.0) * spectral_density(model, omega);
}

}  // namespace lsed
