#pragma once

#include <cstdint>
#include <vector>

#include "lsed/constants.hpp"
#include "lsed/field.hpp"
#include "lsed/force.hpp"

namespace lsed {

struct ParticleState {
  double x = 0.0;
  double v = 0.0;
  double t = 0.0;
};

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double sample_dt = 0.01;    // spacing of the dense output
  double escape_bound = 0.0;  // 0 = auto: 1e3 * max(1, |x0|)
  double min_step_factor = 1e-12;
};

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double v = 0.0;
  double a = 0.0;
  double e_field = 0.0;
};

struct TrajectoryMeta {
  std::uint64_t field_seed = 0;
  StepControl control;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  TrajectoryMeta meta;
};

struct BalanceReport {
  double radiated_power = 0.0;   // m tau <a^2>
  double absorbed_power = 0.0;   // e <v E>
  double dh_dt = 0.0;            // windowed finite difference of H
  double t_begin = 0.0;
  double t_end = 0.0;
  bool quantum_regime = false;   // |radiated - absorbed| / radiated below threshold
};

/// Integrate the order-reduced Braffort-Marshall equation
///   m a = f(x) + tau (f'(x) v + e dE/dt) + e E(t)
/// with an adaptive Dormand-Prince RK45 scheme, sampling at uniform times.
Trajectory integrate(const ForceModel& force, const FieldRealization& realization,
                     const PhysicalConstants& constants, const ParticleState& init, double t_end,
                     const StepControl& control);

/// Particle Hamiltonian including the Schott term, H = mv^2/2 + V(x) - m tau v a.
double hamiltonian(const ParticleState& state, double accel, const ForceModel& force,
                   const PhysicalConstants& constants);

/// Window averages of radiated power, absorbed power and dH/dt over
/// [t_begin, t_end] of a trajectory.
BalanceReport power_balance(const Trajectory& traj, const ForceModel& force,
                            const FieldRealization& realization, const PhysicalConstants& constants,
                            double t_begin, double t_end, double regime_threshold = 0.05);

/// Closed-form steady-state response of a free particle to the sampled field,
/// x(t) = sum_k Re[ -e w_k e^{i(w t + phi)} / (m w^2 (1 - i tau w)) ].
double free_particle_response(const FieldRealization& realization,
                              const PhysicalConstants& constants, double t);

/// Velocity of the closed-form free-particle response.
double free_particle_response_velocity(const FieldRealization& realization,
                                       const PhysicalConstants& constants, double t);

}  // namespace lsed
