#include <cmath>
#include <vector>

#include <doctest.h>

#include "lsed/variational.hpp"

using namespace lsed;

namespace {
const PhysicalConstants kNat = PhysicalConstants::natural();
}

TEST_CASE("contracted mean kinetic energy") {
  const auto sol = harmonic_ladder(1.0, 12, kNat);
  const auto amps = build_relevant_amplitudes(std::vector<double>(12, 0.0));
  CHECK(mean_kinetic(sol.X, 0, amps, kNat) == doctest::Approx(0.25).epsilon(1e-12));
  // excited states hold (m/2) (2a + 1) w / 2 under the same contraction
  CHECK(mean_kinetic(sol.X, 3, amps, kNat) == doctest::Approx(0.25 * 7.0).epsilon(1e-10));
  // time independent
  CHECK(mean_kinetic(sol.X, 0, amps, kNat, 17.3) ==
        doctest::Approx(mean_kinetic(sol.X, 0, amps, kNat, 0.0)).epsilon(1e-15));

  ResponseMatrix still;
  still.entries = Eigen::MatrixXcd::Zero(4, 4);
  still.levels.omegas = Eigen::VectorXd::LinSpaced(4, 0.0, 3.0);
  still.levels.energies = still.levels.omegas;
  const auto amps4 = build_relevant_amplitudes(std::vector<double>(4, 0.0));
  CHECK(mean_kinetic(still, 0, amps4, kNat) == 0.0);

  CHECK_THROWS_AS(mean_kinetic(sol.X, 0, amps4, kNat), ConfigError);
}

TEST_CASE("phase ensemble average reproduces the contraction") {
  const auto sol = harmonic_ladder(1.0, 10, kNat);
  const auto amps = build_relevant_amplitudes(std::vector<double>(10, 0.0));
  // state 2 couples both up and down, so the draws genuinely fluctuate
  const double exact = mean_kinetic(sol.X, 2, amps, kNat);
  double se = 0.0;
  const double mc = mean_kinetic_mc(sol.X, 2, kNat, 100000, 42, 0.7, &se);
  CHECK(se > 0.0);
  CHECK(std::abs(mc - exact) <= 3.0 * se);

  // the ground state has a single coupled partner, so its kinetic energy is
  // sharp draw by draw
  double se0 = 0.0;
  CHECK(mean_kinetic_mc(sol.X, 0, kNat, 500, 42, 0.0, &se0) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(se0 < 1e-10);

  // deterministic under the seed; state 2 actually fluctuates, so different
  // seeds give different finite-ensemble means
  CHECK(mean_kinetic_mc(sol.X, 2, kNat, 2000, 42) ==
        mean_kinetic_mc(sol.X, 2, kNat, 2000, 42));
  CHECK(mean_kinetic_mc(sol.X, 2, kNat, 2000, 42) !=
        mean_kinetic_mc(sol.X, 2, kNat, 2000, 43));
}

TEST_CASE("stochastic phase perturbations cost at second order") {
  const auto sol = harmonic_ladder(1.0, 10, kNat);
  PhaseVariation dir;
  dir.state = 0;
  dir.deltas = {0.0, 1.0, -0.7, 0.4, 0.9, -1.2, 0.3, 0.8, -0.5, 0.6};
  ScanOptions opts;
  opts.ensemble = 200000;
  opts.seed = 7;
  const std::vector<double> eps{0.0, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  const auto res = phase_variation_scan(sol.X, 0, dir, eps, kNat, opts);

  REQUIRE(res.points.size() == eps.size());
  CHECK(res.points[0].deviation == 0.0);
  for (std::size_t i = 2; i < res.points.size(); ++i)
    CHECK(std::abs(res.points[i].deviation) > std::abs(res.points[i - 1].deviation));
  CHECK(res.loglog_slope >= 1.9);
  CHECK(res.loglog_slope <= 2.1);
  CHECK(res.mixing_curvature > 0.0);
}

TEST_CASE("mixing curvature is the amplitude-weighted energy cost") {
  const auto sol = harmonic_ladder(1.0, 8, kNat);
  PhaseVariation dir;
  dir.state = 0;
  dir.deltas = std::vector<double>(8, 0.0);
  dir.deltas[1] = 0.5;
  ScanOptions opts;
  opts.ensemble = 100;
  opts.seed = 1;
  const auto res = phase_variation_scan(sol.X, 0, dir, {1e-2}, kNat, opts);
  // only the 0 -> 1 admixture contributes: 0.25 |x01|^2 (E1 - E0) = 0.125
  CHECK(res.mixing_curvature == doctest::Approx(0.125).epsilon(1e-10));

  // excited states can lower their energy by mixing downward
  PhaseVariation down;
  down.state = 3;
  down.deltas = std::vector<double>(8, 0.0);
  down.deltas[2] = 1.0;
  const auto res3 = phase_variation_scan(sol.X, 3, down, {1e-2}, kNat, opts);
  CHECK(res3.mixing_curvature < 0.0);
}

TEST_CASE("the entry for the probed state is held fixed") {
  const auto sol = harmonic_ladder(1.0, 8, kNat);
  PhaseVariation dir;
  dir.state = 0;
  dir.deltas = std::vector<double>(8, 0.0);
  dir.deltas[0] = 5.0;  // ignored: a common phase of the probed state drops out
  ScanOptions opts;
  opts.ensemble = 1000;
  opts.seed = 3;
  const auto res = phase_variation_scan(sol.X, 0, dir, {1e-2, 1e-1}, kNat, opts);
  for (const auto& p : res.points) CHECK(p.deviation == 0.0);
  CHECK(res.mixing_curvature == 0.0);
}

TEST_CASE("variational input validation") {
  const auto sol = harmonic_ladder(1.0, 8, kNat);
  PhaseVariation bad;
  bad.state = 0;
  bad.deltas = {1.0, 2.0};  // wrong length
  CHECK_THROWS_AS(phase_variation_scan(sol.X, 0, bad, {1e-2}, kNat), ConfigError);

  PhaseVariation ok;
  ok.state = 0;
  ok.deltas = std::vector<double>(8, 1.0);
  ScanOptions empty;
  empty.ensemble = 0;
  CHECK_THROWS_AS(phase_variation_scan(sol.X, 0, ok, {1e-2}, kNat, empty), ConfigError);
  CHECK_THROWS_AS(phase_variation_scan(sol.X, 9, ok, {1e-2}, kNat), ConfigError);
  CHECK_THROWS_AS(mean_kinetic_mc(sol.X, 0, kNat, 0, 1), ConfigError);
}
