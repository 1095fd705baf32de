#pragma once

#include <functional>

#include <Eigen/Dense>

#include "lsed/constants.hpp"
#include "lsed/force.hpp"

namespace lsed {

struct BasisSpec {
  std::size_t size = 16;  // number of levels requested
  double scale = 1.0;     // frequency of the harmonic expansion basis

  void validate() const {
    if (size < 4) throw ConfigError("BasisSpec: size must be >= 4");
    if (!(scale > 0.0)) throw ConfigError("BasisSpec: scale must be positive");
  }
};

struct DiagonalizeResult {
  Eigen::VectorXd eigenvalues;       // lowest `size` levels, ascending
  Eigen::MatrixXd position_elements; // <a|x|b> in the eigenbasis
  std::size_t working_basis = 0;     // basis size at which convergence was reached
};

/// Reference quantum solution: H = p^2/2m + V(x) assembled from ladder-operator
/// matrix elements in a harmonic basis, diagonalized, with convergence checked
/// by doubling the working basis until the requested levels are stable.
DiagonalizeResult diagonalize(const ForceModel& force, const BasisSpec& basis,
                              const PhysicalConstants& constants, double level_tol = 1e-10);

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance tol.
double quad_integrate(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace lsed
