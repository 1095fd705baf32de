#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lsed/errors.hpp"

namespace lsed {

/// The unit-modulus stochastic factors a_{ab} = exp(i(phi_a - phi_b)).
/// By construction |a_{ab}| = 1, conj(a_{ab}) = a_{ba}, a_{aa} = 1 and the
/// chain rule a_{al} a_{lb} = a_{ab} holds exactly.
struct RelevantAmplitudes {
  Eigen::VectorXd state_phases;
  Eigen::MatrixXcd matrix;

  std::complex<double> operator()(Eigen::Index a, Eigen::Index b) const { return matrix(a, b); }
  Eigen::Index size() const { return state_phases.size(); }
};

inline RelevantAmplitudes build_relevant_amplitudes(const std::vector<double>& state_phases) {
  if (state_phases.empty())
    throw ConfigError("build_relevant_amplitudes: need at least one state phase");
  const Eigen::Index n = static_cast<Eigen::Index>(state_phases.size());
  RelevantAmplitudes amp;
  amp.state_phases = Eigen::Map<const Eigen::VectorXd>(state_phases.data(), n);
  amp.matrix.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      amp.matrix(a, b) = std::polar(1.0, state_phases[static_cast<std::size_t>(a)] -
                                             state_phases[static_cast<std::size_t>(b)]);
  return amp;
}

}  // namespace lsed
