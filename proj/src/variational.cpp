#include "lsed/variational.hpp"

#include <cmath>
#include <complex>

#include "lsed/errors.hpp"
#include "lsed/rng.hpp"

namespace lsed {

namespace {

void check_state(const ResponseMatrix& X, Eigen::Index state) {
  if (state < 0 || state >= X.size())
    throw ConfigError("variational: state index out of range");
}

constexpr std::uint64_t kPhaseDrawStream = 11;
constexpr std::uint64_t kJitterStream = 12;

}  // namespace

double mean_kinetic(const ResponseMatrix& X, Eigen::Index state,
                    const RelevantAmplitudes& amplitudes, const PhysicalConstants& k, double) {
  check_state(X, state);
  if (amplitudes.size() != X.size())
    throw ConfigError("mean_kinetic: amplitudes and response matrix sizes differ");
  double t = 0.0;
  for (Eigen::Index b = 0; b < X.size(); ++b) {
    const double w = X.omega(state, b);
    t += w * w * std::norm(X.entries(state, b));
  }
  return 0.5 * k.m * t;
}

double mean_kinetic_mc(const ResponseMatrix& X, Eigen::Index state, const PhysicalConstants& k,
                       std::size_t draws, std::uint64_t seed, double t, double* std_error) {
  check_state(X, state);
  if (draws == 0) throw ConfigError("mean_kinetic_mc: need at least one draw");
  const Eigen::Index n = X.size();
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    std::complex<double> v = 0.0;
    const double phi_a =
        rng::phase(seed, kPhaseDrawStream, i * static_cast<std::size_t>(n) +
                                               static_cast<std::size_t>(state));
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == state) continue;
      const double w = X.omega(state, b);
      const double phi_b = rng::phase(seed, kPhaseDrawStream,
                                      i * static_cast<std::size_t>(n) +
                                          static_cast<std::size_t>(b));
      v += std::complex<double>(0.0, w) * X.entries(state, b) *
           std::polar(1.0, phi_a - phi_b - w * t);
    }
    const double ti = 0.5 * k.m * std::norm(v);
    sum += ti;
    sum2 += ti * ti;
  }
  const double mean = sum / static_cast<double>(draws);
  if (std_error) {
    const double var =
        std::max(0.0, sum2 / static_cast<double>(draws) - mean * mean);
    *std_error = std::sqrt(var / static_cast<double>(draws));
  }
  return mean;
}

ScanResult phase_variation_scan(const ResponseMatrix& X, Eigen::Index state,
                                const PhaseVariation& direction,
                                const std::vector<double>& epsilons,
                                const PhysicalConstants& k, const ScanOptions& opts) {
  check_state(X, state);
  if (static_cast<Eigen::Index>(direction.deltas.size()) != X.size())
    throw ConfigError("phase_variation_scan: one delta per state required");
  if (opts.ensemble == 0) throw ConfigError("phase_variation_scan: empty ensemble");

  const Eigen::Index n = X.size();
  std::vector<double> deltas = direction.deltas;
  deltas[static_cast<std::size_t>(state)] = 0.0;

  ScanResult out;
  for (Eigen::Index l = 0; l < n; ++l) {
    if (l == state) continue;
    out.mixing_curvature += deltas[static_cast<std::size_t>(l)] *
                            deltas[static_cast<std::size_t>(l)] *
                            std::norm(X.entries(state, l)) *
                            (X.levels.energies(l) - X.levels.energies(state));
  }

  // Per-state jitter contraction E[cos(eps delta_b (eta - eta'))], one pair of
  // normal draws per ensemble member, shared across epsilons so the scan is
  // smooth in eps.
  std::vector<double> eta1(opts.ensemble), eta2(opts.ensemble);
  for (std::size_t i = 0; i < opts.ensemble; ++i) {
    eta1[i] = rng::normal(opts.seed, kJitterStream, 2 * i);
    eta2[i] = rng::normal(opts.seed, kJitterStream, 2 * i + 1);
  }

  for (double eps : epsilons) {
    double dev = 0.0;
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == state) continue;
      const double d = deltas[static_cast<std::size_t>(b)];
      const double w = X.omega(state, b);
      const double x2 = std::norm(X.entries(state, b));
      if (x2 == 0.0 || d == 0.0) continue;
      double mc = 0.0;
      for (std::size_t i = 0; i < opts.ensemble; ++i)
        mc += std::cos(eps * d * (eta1[i] - eta2[i]));
      mc /= static_cast<double>(opts.ensemble);
      dev += 0.5 * k.m * w * w * x2 * (mc - 1.0);
    }
    out.points.push_back({eps, dev});
  }

  // Least-squares slope of log|deviation| against log eps.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t cnt = 0;
  for (const auto& p : out.points) {
    if (p.epsilon <= 0.0 || p.deviation == 0.0) continue;
    const double lx = std::log(p.epsilon);
    const double ly = std::log(std::abs(p.deviation));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt >= 2) {
    const double c = static_cast<double>(cnt);
    out.loglog_slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
  }
  return out;
}

}  // namespace lsed
