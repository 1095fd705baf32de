#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "lsed/balance.hpp"
#include "lsed/oracle.hpp"

using namespace lsed;

namespace {

const double kPi = std::numbers::pi;
const PhysicalConstants kNat = PhysicalConstants::natural();

ResponseMatrix two_level(double omega, double x01, double e0 = 0.5) {
  ResponseMatrix x;
  x.entries = Eigen::MatrixXcd::Zero(2, 2);
  x.entries(0, 1) = x.entries(1, 0) = x01;
  x.levels.omegas.resize(2);
  x.levels.omegas << e0, e0 + omega;
  x.levels.energies = x.levels.omegas;
  return x;
}

}  // namespace

TEST_CASE("absorbed power closed forms") {
  const auto sol = harmonic_ladder(1.0, 12, kNat);

  const auto dark = SpectralModel::custom(kNat, {{0.0, 0.0}, {100.0, 0.0}});
  CHECK(absorbed_power(sol.X, 0, dark) == 0.0);

  const auto vac = SpectralModel::zero_point(kNat);
  const double absorbed = absorbed_power(sol.X, 0, vac);
  const double larmor = larmor_power(sol.X, 0, kNat);
  CHECK(absorbed == doctest::Approx(larmor).epsilon(1e-10));
  // e^2 hbar omega0^3 / (3 c^3 m) in these units
  CHECK(absorbed == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const auto toy = two_level(1.0, std::sqrt(0.3));
  CHECK(absorbed_power(toy, 0, vac) == doctest::Approx((2.0 / 3.0) * 0.3).epsilon(1e-12));
}

TEST_CASE("detailed balance brackets vanish exactly on the vacuum") {
  const ForceModel quartic{{-1.0, 0.0, -0.1}, 0.0};
  const auto sol = solve_selfconsistent(quartic, 16, kNat);
  const auto res = detailed_balance_residual(sol.X, 0, SpectralModel::zero_point(kNat));
  REQUIRE(!res.per_frequency.empty());
  for (const auto& fr : res.per_frequency)
    CHECK(std::abs(fr.bracket) < 1e-12 * (1.0 + fr.omega * fr.omega * fr.omega));
  CHECK(std::abs(res.total) < 1e-10);

  CHECK_THROWS_AS(detailed_balance_residual(sol.X, 1, SpectralModel::zero_point(kNat)),
                  ConfigError);
}

TEST_CASE("classical spectrum breaks detailed balance") {
  const ForceModel quartic{{-1.0, 0.0, -0.1}, 0.0};
  const auto sol = solve_selfconsistent(quartic, 16, kNat);
  const auto rj = SpectralModel::rayleigh_jeans(kNat, 1.0);
  const auto res = detailed_balance_residual(sol.X, 0, rj);
  REQUIRE(res.per_frequency.size() >= 2);
  for (const auto& fr : res.per_frequency) {
    CHECK(std::abs(fr.bracket) > 1e-6);
    // bracket sign flips at omega = 2 / (hbar beta)
    CHECK((fr.bracket > 0.0) == (fr.omega < 2.0));
  }
  CHECK(std::abs(res.total) > 1e-6);
}

TEST_CASE("a single bracket can be tuned to zero") {
  const auto toy = two_level(1.0, 0.5);
  const double rho_fix = kNat.hbar / (2.0 * kPi * kPi);  // hbar w^3 / 2 pi^2 c^3 at w = 1
  const auto tuned = SpectralModel::custom(kNat, {{0.5, rho_fix}, {1.5, rho_fix}});
  const auto res = detailed_balance_residual(toy, 0, tuned);
  REQUIRE(res.per_frequency.size() == 1);
  CHECK(std::abs(res.total) < 1e-15);
}

TEST_CASE("vacuum spectrum from the balance bracket") {
  const auto rho = solve_vacuum_spectrum({1.0, 2.0}, kNat);
  CHECK(rho[0] == doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-13));
  CHECK(rho[1] / rho[0] == doctest::Approx(8.0).epsilon(1e-13));

  // independent bisection on the bracket as a function of rho
  const double w = 1.7;
  auto bracket = [&](double r) {
    return -w * w * w + (2.0 * kPi * kPi / kNat.hbar) * r;
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (bracket(mid) < 0.0 ? lo : hi) = mid;
  }
  CHECK(solve_vacuum_spectrum({w}, kNat)[0] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));

  CHECK_THROWS_AS(solve_vacuum_spectrum({-1.0}, kNat), ConfigError);
}

TEST_CASE("integral-of-motion balance") {
  const ForceModel quartic{{-1.0, 0.0, -0.1}, 0.0};
  const auto sol = solve_selfconsistent(quartic, 16, kNat);
  const auto rj = SpectralModel::rayleigh_jeans(kNat, 1.0);
  const auto vac = SpectralModel::zero_point(kNat);

  std::vector<double> energies(sol.levels.energies.data(),
                               sol.levels.energies.data() + sol.levels.energies.size());
  std::vector<double> constant(energies.size(), 3.14);

  CHECK(integral_of_motion_balance(constant, sol.X, 0, rj) == 0.0);
  CHECK(std::abs(integral_of_motion_balance(energies, sol.X, 0, vac)) < 1e-13);
  CHECK(std::abs(integral_of_motion_balance(energies, sol.X, 3, vac)) < 1e-13);

  // with xi = E the residual is proportional to the detailed-balance total
  const double iom = integral_of_motion_balance(energies, sol.X, 0, rj);
  const double db = detailed_balance_residual(sol.X, 0, rj).total;
  const double expected_ratio =
      3.0 * kNat.hbar * kNat.hbar / (4.0 * kPi * kPi * kNat.e_charge * kNat.e_charge);
  CHECK(iom / db == doctest::Approx(expected_ratio).epsilon(1e-12));
}

TEST_CASE("rate structure") {
  const auto vac = SpectralModel::zero_point(kNat);
  const auto sol = harmonic_ladder(1.0, 12, kNat);

  const auto excited = transition_rates(sol.X, 2, vac);
  CHECK(excited.W_ab_induced == 0.0);
  CHECK(excited.W_ab_spontaneous == 0.0);
  CHECK(excited.W_em_induced == 0.0);
  CHECK(excited.W_em_spontaneous > 0.0);

  const double beta = 2.0;
  const auto planck = SpectralModel::planck(kNat, beta);
  const auto toy = two_level(1.0, 0.4);
  const auto rates = transition_rates(toy, 1, planck);
  const double rho0 = zero_point_density(kNat, 1.0);
  const double rho_e = spectral_density(planck, 1.0) - rho0;
  CHECK(rates.W_em_spontaneous / rates.W_em_induced ==
        doctest::Approx(2.0 * rho0 / rho_e).epsilon(1e-12));

  const auto starved = SpectralModel::custom(kNat, {{0.5, 0.0}, {1.5, 0.0}});
  CHECK_THROWS_AS(transition_rates(toy, 0, starved), ConfigError);
}

TEST_CASE("equilibrium spectrum limits") {
  const double w = 1.0;
  const double rho0 = zero_point_density(kNat, w);

  CHECK(equilibrium_spectrum(w, 800.0, kNat) == rho0);  // zero-temperature limit

  const double ratio2 = equilibrium_spectrum(w, 2.0, kNat) / rho0;
  CHECK(ratio2 == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-12));
  CHECK(ratio2 == doctest::Approx(1.3130353).epsilon(1e-6));

  const double beta_hot = 1e-3;
  const double rj = w * w / (kPi * kPi * beta_hot);  // omega^2 k_B T / (pi^2 c^3)
  CHECK(equilibrium_spectrum(w, beta_hot, kNat) == doctest::Approx(rj).epsilon(1e-3));

  CHECK_THROWS_AS(equilibrium_spectrum(-1.0, 1.0, kNat), ConfigError);
  CHECK_THROWS_AS(equilibrium_spectrum(1.0, 0.0, kNat), ConfigError);
}

TEST_CASE("two-level equilibrium residual") {
  const double beta = 1.7;
  const auto toy = two_level(1.0, 0.4);
  const auto eq = SpectralModel::planck(kNat, beta);
  const double at_eq = two_level_equilibrium_check(toy, beta, eq);
  CHECK(std::abs(at_eq) < 1e-12 * zero_point_density(kNat, 1.0));

  const auto vac = SpectralModel::zero_point(kNat);
  const double cooling = two_level_equilibrium_check(toy, beta, vac);
  CHECK(cooling < 0.0);

  const auto bigger = two_level(1.0, 0.4 * std::sqrt(10.0));
  CHECK(two_level_equilibrium_check(bigger, beta, vac) ==
        doctest::Approx(10.0 * cooling).epsilon(1e-12));

  const auto multi = harmonic_ladder(1.0, 6, kNat);
  Eigen::MatrixXcd entries = multi.X.entries;
  entries(0, 3) = entries(3, 0) = 0.1;  // second distinct frequency
  ResponseMatrix bad = multi.X;
  bad.entries = entries;
  CHECK_THROWS_AS(two_level_equilibrium_check(bad, beta, vac), ConfigError);
}

TEST_CASE("first-order radiative displacement") {
  const auto toy = two_level(1.0, 0.5);

  FieldRealization quiet;
  quiet.spectrum.constants = kNat;
  quiet.modes.push_back({0.7, 0.0, 0.3});
  CHECK(radiative_correction(toy, 0, quiet, 1.0) == 0.0);

  FieldRealization field = quiet;
  field.modes[0].weight = 0.25;
  const double t = 2.1;
  const double got = radiative_correction(toy, 0, field, t);

  // brute-force memory integral with adiabatic switching; the switched
  // integral is smooth in eps, so a three-point Richardson step removes the
  // linear and quadratic bias and leaves O(eps^3)
  const double w10 = toy.omega(0, 1);  // -1
  auto switched = [&](double eps) {
    auto integrand = [&](double s) {
      const double e = field.modes[0].weight *
                       std::cos(field.modes[0].omega * (t - s) + field.modes[0].phase);
      return e * std::sin(w10 * s) * std::exp(-eps * s);
    };
    return quad_integrate(integrand, 0.0, 30.0 / eps, 1e-9);
  };
  const double h = 1e-3;
  const double integral = (8.0 * switched(h / 4.0) - 6.0 * switched(h / 2.0) + switched(h)) / 3.0;
  const double expected = -(2.0 * kNat.e_charge / kNat.hbar) * std::norm(toy.entries(0, 1)) *
                          integral;
  CHECK(got == doctest::Approx(expected).epsilon(1e-5));

  // linear in the coupling charge
  FieldRealization doubled = field;
  doubled.spectrum.constants = PhysicalConstants::natural(2.0);
  CHECK(radiative_correction(toy, 0, doubled, t) == doctest::Approx(2.0 * got).epsilon(1e-14));
}

TEST_CASE("balance residual is invariant under charge rescaling") {
  const auto sol = harmonic_ladder(1.0, 12, kNat);
  auto normalized = [&](double e) {
    const auto k = PhysicalConstants::natural(e);
    const auto vac = SpectralModel::zero_point(k);
    return (absorbed_power(sol.X, 0, vac) - larmor_power(sol.X, 0, k)) /
           larmor_power(sol.X, 0, k);
  };
  CHECK(std::abs(normalized(1.0) - normalized(2.0)) < 1e-10);
}
