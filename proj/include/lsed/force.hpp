#pragma once

#include <cstddef>
#include <vector>

#include "lsed/errors.hpp"

namespace lsed {

/// Polynomial external force f(x) = sum_{n>=1} k_n x^n with potential
/// V(x) = -int f dx + potential_offset. The constant-force term is excluded;
/// coefficients start at n = 1.
struct ForceModel {
  std::vector<double> coeffs;  // coeffs[i] = k_{i+1}
  double potential_offset = 0.0;

  static ForceModel harmonic(double m, double omega0) { return ForceModel{{-m * omega0 * omega0}, 0.0}; }

  /// f = -k1 x - k3 x^3 style helper: pass the k_n directly.
  static ForceModel polynomial(std::vector<double> k) { return ForceModel{std::move(k), 0.0}; }

  double force(double x) const {
    double f = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) f = f * x + coeffs[i];
    return f * x;
  }

  double force_derivative(double x) const {
    double df = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
      df = df * x + static_cast<double>(i + 1) * coeffs[i];
    return df;
  }

  double potential(double x) const {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
      v = v * x + coeffs[i] / static_cast<double>(i + 2);
    return -v * x * x + potential_offset;
  }

  /// The highest-order potential term must confine: even degree in V with a
  /// positive coefficient, i.e. the leading k_n has odd n and k_n < 0.
  void validate_confining() const {
    if (coeffs.empty()) throw ConfigError("ForceModel: no coefficients");
    std::size_t lead = coeffs.size();
    while (lead > 0 && coeffs[lead - 1] == 0.0) --lead;
    if (lead == 0) throw ConfigError("ForceModel: force is identically zero");
    const std::size_t n = lead;  // power of x of the leading force term
    if (n % 2 == 0 || coeffs[lead - 1] >= 0.0)
      throw ConfigError("ForceModel: potential is not bounded below");
  }
};

}  // namespace lsed
