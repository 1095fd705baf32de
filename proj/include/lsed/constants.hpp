#pragma once

#include <cmath>

#include "lsed/errors.hpp"

namespace lsed {

/// Physical parameters of one particle coupled to the radiation field.
/// tau is the radiation-reaction time 2 e^2 / (3 m c^3); it is stored
/// explicitly so that every module agrees on its value, and validated
/// against the defining combination.
struct PhysicalConstants {
  double hbar = 1.0;
  double c = 1.0;
  double e_charge = 1.0;
  double m = 1.0;
  double tau = 2.0 / 3.0;

  /// Natural units hbar = m = c = 1 with the charge free.
  static PhysicalConstants natural(double e_charge = 1.0) {
    PhysicalConstants k;
    k.hbar = 1.0;
    k.c = 1.0;
    k.m = 1.0;
    k.e_charge = e_charge;
    k.tau = 2.0 * e_charge * e_charge / (3.0 * k.m * k.c * k.c * k.c);
    return k;
  }

  /// Natural units with tau prescribed; the charge is back-solved so the
  /// parameter set stays consistent.
  static PhysicalConstants natural_with_tau(double tau) {
    PhysicalConstants k;
    k.hbar = 1.0;
    k.c = 1.0;
    k.m = 1.0;
    k.tau = tau;
    k.e_charge = std::sqrt(1.5 * k.m * k.c * k.c * k.c * tau);
    return k;
  }

  void validate() const {
    if (!(hbar > 0.0 && c > 0.0 && e_charge > 0.0 && m > 0.0 && tau > 0.0))
      throw ConfigError("PhysicalConstants: all parameters must be strictly positive");
    const double tau_def = 2.0 * e_charge * e_charge / (3.0 * m * c * c * c);
    if (std::abs(tau - tau_def) > 1e-12 * tau_def)
      throw ConfigError("PhysicalConstants: tau inconsistent with 2e^2/(3mc^3)");
  }
};

}  // namespace lsed
