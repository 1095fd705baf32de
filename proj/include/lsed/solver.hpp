#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "lsed/amplitudes.hpp"
#include "lsed/constants.hpp"
#include "lsed/errors.hpp"
#include "lsed/force.hpp"

namespace lsed {

class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateSpectrumError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

struct LevelSpectrum {
  Eigen::VectorXd omegas;    // state frequencies, ascending
  Eigen::VectorXd energies;  // E_a = hbar * Omega_a

  double transition(Eigen::Index a, Eigen::Index b) const { return omegas(a) - omegas(b); }
};

/// Position matrix x~_{ab} with its attached level spectrum. The transition
/// frequencies w_{ab} = Omega_a - Omega_b are derived, never stored, so the
/// antisymmetry and chain rule hold identically.
struct ResponseMatrix {
  Eigen::MatrixXcd entries;
  LevelSpectrum levels;

  Eigen::Index size() const { return entries.rows(); }
  double omega(Eigen::Index a, Eigen::Index b) const { return levels.transition(a, b); }

  /// Momentum matrix p_{ab} = i m w_{ab} x~_{ab}.
  Eigen::MatrixXcd momentum(double m) const;
};

struct SolveReport {
  int iterations = 0;
  double eom_residual = 0.0;        // max |m w^2 x~ + F| on the interior block
  double commutator_defect = 0.0;   // max |([X,P] - i hbar I)| on the interior block
  double hamiltonian_offdiag = 0.0;
  Eigen::Index interior_begin = 0;
  Eigen::Index interior_end = 0;    // exclusive
};

struct SolverOptions {
  int max_newton = 60;
  double newton_tol = 1e-12;
  int homotopy_steps = 4;       // initial step count; halved adaptively on failure
  Eigen::Index margin = -1;     // interior block excludes this many top states; -1 = N/4
  double degeneracy_gap = 1e-8; // minimum relative level spacing
};

struct SolveResult {
  LevelSpectrum levels;
  ResponseMatrix X;
  SolveReport report;
};

/// F_{ab} = sum_n k_n (X^n)_{ab}.
Eigen::MatrixXcd force_matrix(const ForceModel& force, const Eigen::MatrixXcd& X);

/// The exact truncated ladder solution of the linear force -m w0^2 x.
SolveResult harmonic_ladder(double omega0, Eigen::Index n, const PhysicalConstants& constants);

/// Damped-Newton solve of the coupled system
///   m w_{ab}^2 x~_{ab} = -F_{ab},   [X, P]_{aa} = i hbar   (P = i m w X),
/// for a confining polynomial force, homotoping the nonlinear coefficients
/// from the harmonic initial guess.
SolveResult solve_selfconsistent(const ForceModel& force, Eigen::Index n,
                                 const PhysicalConstants& constants,
                                 const SolverOptions& opts = {});

/// max over the interior block of |([X, P] - i hbar I)_{ab}|; interior < 0
/// means the default block [0, N - N/4).
double commutator_defect(const ResponseMatrix& X, const PhysicalConstants& constants,
                         Eigen::Index interior = -1);

struct HamiltonianDiagnostics {
  Eigen::MatrixXcd H;          // P^2/2m + V(X)
  double offdiag_norm = 0.0;   // max |H_{ab}|, a != b, interior block
  double bohr_residual = 0.0;  // max |H_{aa} - H_{bb} - hbar w_{ab}|, interior block
};

HamiltonianDiagnostics hamiltonian_matrix(const ResponseMatrix& X, const ForceModel& force,
                                          const PhysicalConstants& constants,
                                          Eigen::Index interior = -1);

/// Elementwise (AB - BA)_{ab} * a_{ab}; with unit amplitudes this is the
/// plain commutator.
Eigen::MatrixXcd poissonian(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                            const RelevantAmplitudes& amplitudes);

}  // namespace lsed
