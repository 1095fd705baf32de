#include "lsed/balance.hpp"

#include <cmath>
#include <numbers>

#include "lsed/errors.hpp"

namespace lsed {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

void check_state(const ResponseMatrix& X, Eigen::Index state) {
  if (state < 0 || state >= X.size())
    throw ConfigError("balance: state index out of range");
}

}  // namespace

double radiative_correction(const ResponseMatrix& X, Eigen::Index state,
                            const FieldRealization& realization, double t) {
  check_state(X, state);
  const PhysicalConstants& k = realization.spectrum.constants;
  double dx = 0.0;
  for (Eigen::Index b = 0; b < X.size(); ++b) {
    if (b == state) continue;
    const double wab = X.omega(state, b);
    const double x2 = std::norm(X.entries(state, b));
    if (x2 == 0.0) continue;
    // int_0^inf E(t - s) sin(w_ab s) ds per cosine mode, adiabatic limit:
    // the quadrature sin x sin part averages out, leaving the principal value
    // w_ab / (w_ab^2 - w^2) against cos(w t + phi).
    double conv = 0.0;
    for (const auto& m : realization.modes)
      conv += m.weight * std::cos(m.omega * t + m.phase) * wab /
              (wab * wab - m.omega * m.omega);
    dx += x2 * conv;
  }
  return -(2.0 * k.e_charge / k.hbar) * dx;
}

double absorbed_power(const ResponseMatrix& X, Eigen::Index state, const SpectralModel& model) {
  check_state(X, state);
  const PhysicalConstants& k = model.constants;
  double s = 0.0;
  for (Eigen::Index b = 0; b < X.size(); ++b) {
    if (b == state) continue;
    const double wab = X.omega(state, b);
    s += wab * spectral_density(model, std::abs(wab)) * std::norm(X.entries(state, b));
  }
  return -(4.0 * kPi2 * k.e_charge * k.e_charge / (3.0 * k.hbar)) * s;
}

double larmor_power(const ResponseMatrix& X, Eigen::Index state, const PhysicalConstants& k) {
  check_state(X, state);
  double s = 0.0;
  for (Eigen::Index b = 0; b < X.size(); ++b) {
    if (b == state) continue;
    const double wab = X.omega(state, b);
    s += wab * wab * wab * wab * std::norm(X.entries(state, b));
  }
  return (2.0 * k.e_charge * k.e_charge / (3.0 * k.c * k.c * k.c)) * s;
}

BalanceResidual detailed_balance_residual(const ResponseMatrix& X, Eigen::Index state,
                                          const SpectralModel& model) {
  check_state(X, state);
  const PhysicalConstants& k = model.constants;
  for (Eigen::Index b = 0; b < X.size(); ++b)
    if (b != state && X.omega(state, b) > 0.0 && std::norm(X.entries(state, b)) > 0.0)
      throw ConfigError(
          "detailed_balance_residual: state is not the ground state; use transition_rates "
          "for excited states");
  BalanceResidual out;
  const double c3 = k.c * k.c * k.c;
  for (Eigen::Index b = 0; b < X.size(); ++b) {
    if (b == state) continue;
    const double x2 = std::norm(X.entries(state, b));
    if (x2 == 0.0) continue;
    const double w = std::abs(X.omega(state, b));
    FrequencyResidual fr;
    fr.omega = w;
    fr.bracket = -w * w * w + (2.0 * kPi2 * c3 / k.hbar) * spectral_density(model, w);
    fr.weight = (2.0 * k.e_charge * k.e_charge / (3.0 * c3)) * w * x2;
    out.total += fr.bracket * fr.weight;
    out.per_frequency.push_back(fr);
  }
  return out;
}

std::vector<double> solve_vacuum_spectrum(const std::vector<double>& frequencies,
                                          const PhysicalConstants& k) {
  std::vector<double> rho;
  rho.reserve(frequencies.size());
  for (double w : frequencies) {
    if (!(w > 0.0)) throw ConfigError("solve_vacuum_spectrum: frequencies must be positive");
    // Root of the detailed-balance bracket, linear in rho.
    rho.push_back(k.hbar * w * w * w / (2.0 * kPi2 * k.c * k.c * k.c));
  }
  return rho;
}

double integral_of_motion_balance(const std::vector<double>& xi, const ResponseMatrix& X,
                                  Eigen::Index state, const SpectralModel& model) {
  check_state(X, state);
  if (static_cast<Eigen::Index>(xi.size()) != X.size())
    throw ConfigError("integral_of_motion_balance: xi must have one value per state");
  const PhysicalConstants& k = model.constants;
  const double pref = k.hbar / (2.0 * kPi2 * k.c * k.c * k.c);
  double total = 0.0;
  for (Eigen::Index b = 0; b < X.size(); ++b) {
    if (b == state) continue;
    const double wab = X.omega(state, b);
    const double sgn = wab < 0.0 ? -1.0 : 1.0;
    const double bracket = -pref * wab * wab * wab + sgn * spectral_density(model, std::abs(wab));
    total += bracket * (xi[static_cast<std::size_t>(state)] - xi[static_cast<std::size_t>(b)]) *
             std::norm(X.entries(state, b));
  }
  return total;
}

RateReport transition_rates(const ResponseMatrix& X, Eigen::Index state,
                            const SpectralModel& model) {
  check_state(X, state);
  const PhysicalConstants& k = model.constants;
  const double pref = 4.0 * kPi2 * k.e_charge * k.e_charge / (3.0 * k.hbar);
  RateReport out;
  for (Eigen::Index b = 0; b < X.size(); ++b) {
    if (b == state) continue;
    const double wab = X.omega(state, b);
    const double x2 = std::norm(X.entries(state, b));
    if (x2 == 0.0) continue;
    const double w = std::abs(wab);
    const double rho0 = zero_point_density(k, w);
    double rho_e = spectral_density(model, w) - rho0;
    if (rho_e < -1e-12 * rho0)
      throw ConfigError("transition_rates: model has rho < rho0; rho_e must be nonnegative");
    if (rho_e < 0.0) rho_e = 0.0;
    if (wab < 0.0) {
      out.W_ab_induced += pref * w * rho_e * x2;
    } else {
      out.W_em_induced += pref * w * rho_e * x2;
      out.W_em_spontaneous += 2.0 * pref * w * rho0 * x2;
    }
  }
  return out;
}

double equilibrium_spectrum(double omega, double beta, const PhysicalConstants& k) {
  if (!(omega > 0.0)) throw ConfigError("equilibrium_spectrum: omega must be positive");
  if (!(beta > 0.0)) throw ConfigError("equilibrium_spectrum: beta must be positive");
  const double rho0 = zero_point_density(k, omega);
  return rho0 + 2.0 * rho0 / std::expm1(beta * k.hbar * omega);
}

double two_level_equilibrium_check(const ResponseMatrix& X, double beta,
                                   const SpectralModel& model) {
  if (!(beta > 0.0)) throw ConfigError("two_level_equilibrium_check: beta must be positive");
  const PhysicalConstants& k = model.constants;
  double w_rel = 0.0, x2 = 0.0;
  Eigen::Index lo = -1, up = -1;
  for (Eigen::Index a = 0; a < X.size(); ++a)
    for (Eigen::Index b = a + 1; b < X.size(); ++b) {
      const double s = std::norm(X.entries(a, b));
      if (s == 0.0) continue;
      const double w = std::abs(X.omega(a, b));
      if (w_rel == 0.0) {
        w_rel = w;
        x2 = s;
        lo = X.levels.energies(a) <= X.levels.energies(b) ? a : b;
        up = lo == a ? b : a;
      } else if (std::abs(w - w_rel) > 1e-9 * w_rel) {
        throw ConfigError(
            "two_level_equilibrium_check: more than one relevant transition frequency");
      }
    }
  if (lo < 0)
    throw ConfigError("two_level_equilibrium_check: no nonzero transition amplitude");
  const double rho0 = zero_point_density(k, w_rel);
  const double rho_e = spectral_density(model, w_rel) - rho0;
  const double e_lo = X.levels.energies(lo);
  const double e_up = X.levels.energies(up);
  return std::exp(-beta * e_lo) * rho_e * x2 - std::exp(-beta * e_up) * (rho_e + 2.0 * rho0) * x2;
}

}  // namespace lsed
