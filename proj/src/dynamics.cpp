#include "lsed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "lsed/errors.hpp"

namespace lsed {

namespace {

struct Deriv {
  double dx;
  double dv;
};

// Right-hand side of the order-reduced equation. The third-derivative
// radiation-reaction term is replaced by tau d/dt[f(x) + e E(t)], which is
// free of runaway solutions and accurate to O(tau^2).
inline Deriv rhs(const ForceModel& force, const FieldRealization& field,
                 const PhysicalConstants& k, double t, double x, double v) {
  const double f = force.force(x);
  const double fp = force.force_derivative(x);
  const double e_t = evaluate_field(field, t);
  const double de_t = evaluate_field_derivative(field, t);
  const double a = (f + k.tau * (fp * v + k.e_charge * de_t) + k.e_charge * e_t) / k.m;
  return {v, a};
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Trajectory integrate(const ForceModel& force, const FieldRealization& field,
                     const PhysicalConstants& constants, const ParticleState& init, double t_end,
                     const StepControl& control) {
  if (!(t_end > init.t)) throw ConfigError("integrate: t_end must exceed init.t");
  if (!(control.sample_dt > 0.0)) throw ConfigError("integrate: sample_dt must be positive");

  const double escape =
      control.escape_bound > 0.0 ? control.escape_bound : 1e3 * std::max(1.0, std::abs(init.x));

  Trajectory traj;
  traj.meta.field_seed = field.seed;
  traj.meta.control = control;

  double t = init.t, x = init.x, v = init.v;
  Deriv k1 = rhs(force, field, constants, t, x, v);

  auto emit = [&](double ts, double xs, double vs, const Deriv& d) {
    traj.samples.push_back({ts, xs, vs, d.dv, evaluate_field(field, ts)});
  };
  emit(t, x, v, k1);

  double next_sample = init.t + control.sample_dt;
  double h = std::min(control.sample_dt, (t_end - init.t) / 10.0);
  const double h_min = control.min_step_factor * (t_end - init.t);

  while (t < t_end) {
    bool hit_sample = false;
    double target = std::min(t_end, next_sample);
    if (t + h >= target - 1e-14 * std::abs(target)) {
      h = target - t;
      hit_sample = true;
    }

    const Deriv k2 = rhs(force, field, constants, t + c2 * h, x + h * a21 * k1.dx,
                         v + h * a21 * k1.dv);
    const Deriv k3 = rhs(force, field, constants, t + c3 * h,
                         x + h * (a31 * k1.dx + a32 * k2.dx), v + h * (a31 * k1.dv + a32 * k2.dv));
    const Deriv k4 =
        rhs(force, field, constants, t + c4 * h, x + h * (a41 * k1.dx + a42 * k2.dx + a43 * k3.dx),
            v + h * (a41 * k1.dv + a42 * k2.dv + a43 * k3.dv));
    const Deriv k5 = rhs(force, field, constants, t + c5 * h,
                         x + h * (a51 * k1.dx + a52 * k2.dx + a53 * k3.dx + a54 * k4.dx),
                         v + h * (a51 * k1.dv + a52 * k2.dv + a53 * k3.dv + a54 * k4.dv));
    const Deriv k6 =
        rhs(force, field, constants, t + h,
            x + h * (a61 * k1.dx + a62 * k2.dx + a63 * k3.dx + a64 * k4.dx + a65 * k5.dx),
            v + h * (a61 * k1.dv + a62 * k2.dv + a63 * k3.dv + a64 * k4.dv + a65 * k5.dv));

    const double x5 = x + h * (b1 * k1.dx + b3 * k3.dx + b4 * k4.dx + b5 * k5.dx + b6 * k6.dx);
    const double v5 = v + h * (b1 * k1.dv + b3 * k3.dv + b4 * k4.dv + b5 * k5.dv + b6 * k6.dv);
    const Deriv k7 = rhs(force, field, constants, t + h, x5, v5);

    const double err_x =
        h * (e1 * k1.dx + e3 * k3.dx + e4 * k4.dx + e5 * k5.dx + e6 * k6.dx + e7 * k7.dx);
    const double err_v =
        h * (e1 * k1.dv + e3 * k3.dv + e4 * k4.dv + e5 * k5.dv + e6 * k6.dv + e7 * k7.dv);
    const double scale_x = control.abs_tol + control.rel_tol * std::max(std::abs(x), std::abs(x5));
    const double scale_v = control.abs_tol + control.rel_tol * std::max(std::abs(v), std::abs(v5));
    const double err = std::sqrt(0.5 * ((err_x / scale_x) * (err_x / scale_x) +
                                        (err_v / scale_v) * (err_v / scale_v)));

    if (err <= 1.0) {
      t += h;
      x = x5;
      v = v5;
      k1 = k7;  // FSAL
      ++traj.meta.accepted_steps;
      if (std::abs(x) > escape)
        throw EscapeError("integrate: trajectory escaped |x| > " + std::to_string(escape));
      if (hit_sample && t >= next_sample - 1e-14 * std::abs(next_sample) && t < t_end) {
        emit(t, x, v, k1);
        next_sample += control.sample_dt;
      } else if (t >= t_end) {
        emit(t, x, v, k1);
      }
    } else {
      ++traj.meta.rejected_steps;
    }

    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h = std::min(h * factor, t_end - t + control.sample_dt);
    if (t < t_end && h < h_min)
      throw NumericalError("integrate: step size underflow at t = " + std::to_string(t));
  }
  return traj;
}

double hamiltonian(const ParticleState& state, double accel, const ForceModel& force,
                   const PhysicalConstants& constants) {
  return 0.5 * constants.m * state.v * state.v + force.potential(state.x) -
         constants.m * constants.tau * state.v * accel;
}

BalanceReport power_balance(const Trajectory& traj, const ForceModel& force,
                            const FieldRealization& field, const PhysicalConstants& constants,
                            double t_begin, double t_end, double regime_threshold) {
  const auto& s = traj.samples;
  if (s.size() < 2 || t_begin < s.front().t - 1e-12 || t_end > s.back().t + 1e-12 ||
      !(t_end > t_begin))
    throw ConfigError("power_balance: window must lie inside the trajectory span");

  // Require the window to cover at least 10 correlation times of the field,
  // taken as 2 pi / omega_max of the sampled band.
  double omega_max = 0.0;
  for (const auto& m : field.modes) omega_max = std::max(omega_max, m.omega);
  if (omega_max > 0.0) {
    const double t_corr = 2.0 * std::numbers::pi / omega_max;
    if (t_end - t_begin < 10.0 * t_corr)
      throw ConfigError("power_balance: window shorter than 10 field correlation times");
  }

  // Trapezoidal window averages over the dense samples.
  double sum_a2 = 0.0, sum_ve = 0.0, wsum = 0.0;
  const TrajectorySample* first = nullptr;
  const TrajectorySample* last = nullptr;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i].t < t_begin - 1e-12 || s[i + 1].t > t_end + 1e-12) continue;
    if (!first) first = &s[i];
    last = &s[i + 1];
    const double dt = s[i + 1].t - s[i].t;
    sum_a2 += 0.5 * dt * (s[i].a * s[i].a + s[i + 1].a * s[i + 1].a);
    sum_ve += 0.5 * dt * (s[i].v * s[i].e_field + s[i + 1].v * s[i + 1].e_field);
    wsum += dt;
  }
  if (!first || wsum <= 0.0)
    throw ConfigError("power_balance: no trajectory samples inside the window");

  BalanceReport rep;
  rep.t_begin = first->t;
  rep.t_end = last->t;
  rep.radiated_power = constants.m * constants.tau * sum_a2 / wsum;
  rep.absorbed_power = constants.e_charge * sum_ve / wsum;
  const double h0 = hamiltonian({first->x, first->v, first->t}, first->a, force, constants);
  const double h1 = hamiltonian({last->x, last->v, last->t}, last->a, force, constants);
  rep.dh_dt = (h1 - h0) / (last->t - first->t);
  rep.quantum_regime = rep.radiated_power > 0.0 &&
                       std::abs(rep.radiated_power - rep.absorbed_power) <
                           regime_threshold * rep.radiated_power;
  return rep;
}

double free_particle_response(const FieldRealization& field, const PhysicalConstants& k,
                              double t) {
  double x = 0.0;
  for (const auto& m : field.modes) {
    if (m.omega <= 0.0)
      throw std::domain_error("free_particle_response: zero-frequency mode has singular response");
    const double tw = k.tau * m.omega;
    const double th = m.omega * t + m.phase;
    // Re[-e w e^{i th} / (m w^2 (1 - i tau w))]
    x -= k.e_charge * m.weight * (std::cos(th) - tw * std::sin(th)) /
         (k.m * m.omega * m.omega * (1.0 + tw * tw));
  }
  return x;
}

double free_particle_response_velocity(const FieldRealization& field, const PhysicalConstants& k,
                                       double t) {
  double v = 0.0;
  for (const auto& m : field.modes) {
    if (m.omega <= 0.0)
      throw std::domain_error("free_particle_response: zero-frequency mode has singular response");
    const double tw = k.tau * m.omega;
    const double th = m.omega * t + m.phase;
    v -= k.e_charge * m.weight * (-std::sin(th) - tw * std::cos(th)) /
         (k.m * m.omega * (1.0 + tw * tw));
  }
  return v;
}

}  // namespace lsed
