#include "lsed/solver.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace lsed {

Eigen::MatrixXcd ResponseMatrix::momentum(double m) const {
  const Eigen::Index n = size();
  Eigen::MatrixXcd p(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      p(a, b) = std::complex<double>(0.0, m * omega(a, b)) * entries(a, b);
  return p;
}

Eigen::MatrixXcd force_matrix(const ForceModel& force, const Eigen::MatrixXcd& X) {
  if (X.rows() != X.cols()) throw ConfigError("force_matrix: X must be square");
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(X.rows(), X.cols());
  Eigen::MatrixXcd xp = X;
  for (std::size_t i = 0; i < force.coeffs.size(); ++i) {
    f += force.coeffs[i] * xp;
    if (i + 1 < force.coeffs.size()) xp = xp * X;
  }
  return f;
}

namespace {

// Real force polynomial applied to a real matrix.
Eigen::MatrixXd force_matrix_real(const ForceModel& force, const Eigen::MatrixXd& X) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(X.rows(), X.cols());
  Eigen::MatrixXd xp = X;
  for (std::size_t i = 0; i < force.coeffs.size(); ++i) {
    f += force.coeffs[i] * xp;
    if (i + 1 < force.coeffs.size()) xp = xp * X;
  }
  return f;
}

// Unknown layout: upper triangle of the real symmetric X (row major, a <= b),
// then Omega_1 .. Omega_{N-1} with Omega_0 pinned to 0.
struct Layout {
  Eigen::Index n;
  Eigen::Index tri;    // n(n+1)/2
  Eigen::Index total;  // tri + n - 1

  explicit Layout(Eigen::Index n_) : n(n_), tri(n_ * (n_ + 1) / 2), total(tri + n_ - 1) {}

  Eigen::Index xidx(Eigen::Index a, Eigen::Index b) const {
    return a * n - a * (a - 1) / 2 + (b - a);  // a <= b
  }

  Eigen::MatrixXd unpack_x(const Eigen::VectorXd& u) const {
    Eigen::MatrixXd x(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = a; b < n; ++b) x(a, b) = x(b, a) = u(xidx(a, b));
    return x;
  }

  Eigen::VectorXd unpack_omega(const Eigen::VectorXd& u) const {
    Eigen::VectorXd w(n);
    w(0) = 0.0;
    for (Eigen::Index a = 1; a < n; ++a) w(a) = u(tri + a - 1);
    return w;
  }
};

Eigen::VectorXd residual(const Layout& lay, const ForceModel& force,
                         const PhysicalConstants& k, const Eigen::VectorXd& u) {
  const Eigen::MatrixXd x = lay.unpack_x(u);
  const Eigen::VectorXd w = lay.unpack_omega(u);
  const Eigen::MatrixXd f = force_matrix_real(force, x);
  Eigen::VectorXd r(lay.total);
  for (Eigen::Index a = 0; a < lay.n; ++a)
    for (Eigen::Index b = a; b < lay.n; ++b) {
      const double wab = w(a) - w(b);
      r(lay.xidx(a, b)) = k.m * wab * wab * x(a, b) + f(a, b);
    }
  for (Eigen::Index a = 0; a + 1 < lay.n; ++a) {
    double s = 0.0;
    for (Eigen::Index l = 0; l < lay.n; ++l) s += (w(l) - w(a)) * x(a, l) * x(a, l);
    r(lay.tri + a) = 2.0 * k.m * s - k.hbar;
  }
  return r;
}

Eigen::VectorXd pack_harmonic(const Layout& lay, double omega0, const PhysicalConstants& k) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(lay.total);
  for (Eigen::Index a = 0; a + 1 < lay.n; ++a)
    u(lay.xidx(a, a + 1)) =
        std::sqrt(k.hbar * static_cast<double>(a + 1) / (2.0 * k.m * omega0));
  for (Eigen::Index a = 1; a < lay.n; ++a) u(lay.tri + a - 1) = static_cast<double>(a) * omega0;
  return u;
}

// Damped Newton with forward-difference Jacobian. Returns iterations used, or
// -1 on failure to make progress.
int newton(const Layout& lay, const ForceModel& force, const PhysicalConstants& k,
           Eigen::VectorXd& u, int max_iter, double tol) {
  Eigen::VectorXd r = residual(lay, force, k, u);
  for (int it = 0; it < max_iter; ++it) {
    const double rn = r.lpNorm<Eigen::Infinity>();
    if (rn < tol) return it;
    Eigen::MatrixXd jac(lay.total, lay.total);
    for (Eigen::Index j = 0; j < lay.total; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(u(j)));
      Eigen::VectorXd up = u;
      up(j) += h;
      jac.col(j) = (residual(lay, force, k, up) - r) / h;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const Eigen::VectorXd du = lu.solve(-r);
    if (!du.allFinite()) return -1;
    double t = 1.0;
    while (t > 1e-8) {
      Eigen::VectorXd ut = u + t * du;
      Eigen::VectorXd rt = residual(lay, force, k, ut);
      if (rt.lpNorm<Eigen::Infinity>() < (1.0 - 0.25 * t) * rn || rt.lpNorm<Eigen::Infinity>() < tol) {
        u = std::move(ut);
        r = std::move(rt);
        break;
      }
      t *= 0.5;
    }
    if (t <= 1e-8) return -1;
  }
  return residual(lay, force, k, u).lpNorm<Eigen::Infinity>() < tol ? max_iter : -1;
}

Eigen::Index interior_size(Eigen::Index n, Eigen::Index interior) {
  if (interior >= 0) return std::min(interior, n);
  return n - n / 4;
}

}  // namespace

SolveResult harmonic_ladder(double omega0, Eigen::Index n, const PhysicalConstants& k) {
  if (!(omega0 > 0.0)) throw ConfigError("harmonic_ladder: omega0 must be positive");
  if (n < 2) throw ConfigError("harmonic_ladder: need n >= 2");
  SolveResult out;
  out.levels.omegas.resize(n);
  out.levels.energies.resize(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    out.levels.energies(a) = k.hbar * omega0 * (static_cast<double>(a) + 0.5);
    out.levels.omegas(a) = out.levels.energies(a) / k.hbar;
  }
  out.X.entries = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index a = 0; a + 1 < n; ++a) {
    const double v = std::sqrt(k.hbar * static_cast<double>(a + 1) / (2.0 * k.m * omega0));
    out.X.entries(a, a + 1) = v;
    out.X.entries(a + 1, a) = v;
  }
  out.X.levels = out.levels;
  out.report.interior_begin = 0;
  out.report.interior_end = interior_size(n, -1);
  return out;
}

SolveResult solve_selfconsistent(const ForceModel& force, Eigen::Index n,
                                 const PhysicalConstants& k, const SolverOptions& opts) {
  force.validate_confining();
  if (n < 4) throw ConfigError("solve_selfconsistent: need n >= 4");
  if (force.coeffs.empty() || force.coeffs[0] >= 0.0)
    throw ConfigError(
        "solve_selfconsistent: need a linear restoring term k1 < 0 for the harmonic "
        "initial guess");
  const Eigen::Index interior = interior_size(n, opts.margin);
  if (interior < 1)
    throw TruncationError("solve_selfconsistent: interior block is empty; increase n");

  const double omega0 = std::sqrt(-force.coeffs[0] / k.m);
  const Layout lay(n);
  Eigen::VectorXd u = pack_harmonic(lay, omega0, k);

  auto scaled = [&](double lam) {
    ForceModel f = force;
    for (std::size_t i = 1; i < f.coeffs.size(); ++i) f.coeffs[i] *= lam;
    return f;
  };

  int total_iters = 0;
  const bool nonlinear = force.coeffs.size() > 1;
  double lam = 0.0;
  double step = nonlinear ? 1.0 / static_cast<double>(std::max(opts.homotopy_steps, 1)) : 1.0;
  std::vector<double> residual_trace;
  while (lam < 1.0 - 1e-15) {
    const double target = std::min(1.0, lam + step);
    Eigen::VectorXd trial = u;
    const ForceModel f = scaled(target);
    const int iters = newton(lay, f, k, trial, opts.max_newton, opts.newton_tol);
    if (iters < 0) {
      residual_trace.push_back(residual(lay, f, k, trial).lpNorm<Eigen::Infinity>());
      step *= 0.5;
      if (step < 1e-4) {
        std::string msg = "solve_selfconsistent: Newton failed to converge; residual trace:";
        for (double r : residual_trace) msg += " " + std::to_string(r);
        throw DivergenceError(msg);
      }
      continue;
    }
    u = std::move(trial);
    lam = target;
    total_iters += iters;
  }

  Eigen::MatrixXd x = lay.unpack_x(u);
  Eigen::VectorXd w = lay.unpack_omega(u);

  // Level ordering and degeneracy.
  const double wscale = w.cwiseAbs().maxCoeff();
  for (Eigen::Index a = 0; a + 1 < n; ++a) {
    if (w(a + 1) - w(a) <= opts.degeneracy_gap * wscale)
      throw DegenerateSpectrumError("solve_selfconsistent: levels " + std::to_string(a) +
                                    " and " + std::to_string(a + 1) + " are degenerate");
  }

  // Gauge: flip basis-state signs so x~_{a,a+1} > 0.
  Eigen::VectorXd sign(n);
  sign(0) = 1.0;
  for (Eigen::Index a = 0; a + 1 < n; ++a)
    sign(a + 1) = sign(a) * (x(a, a + 1) < 0.0 ? -1.0 : 1.0);
  x = sign.asDiagonal() * x * sign.asDiagonal();

  SolveResult out;
  out.X.entries = x.cast<std::complex<double>>();
  out.X.levels.omegas = w;
  out.X.levels.energies = k.hbar * w;

  // Absolute level frequencies from the Hamiltonian diagonal, so that
  // E_a = hbar Omega_a while the gaps stay the solved ones up to the
  // Bohr-rule residual.
  const HamiltonianDiagnostics diag = hamiltonian_matrix(out.X, force, k, interior);
  out.levels.energies = diag.H.diagonal().real();
  out.levels.omegas = out.levels.energies / k.hbar;
  out.X.levels = out.levels;

  out.report.iterations = total_iters;
  out.report.interior_begin = 0;
  out.report.interior_end = interior;
  const Eigen::MatrixXcd f_final = force_matrix(force, out.X.entries);
  double eom = 0.0;
  for (Eigen::Index a = 0; a < interior; ++a)
    for (Eigen::Index b = 0; b < interior; ++b) {
      const double wab = out.X.omega(a, b);
      eom = std::max(eom, std::abs(k.m * wab * wab * out.X.entries(a, b) + f_final(a, b)));
    }
  out.report.eom_residual = eom;
  out.report.commutator_defect = commutator_defect(out.X, k, interior);
  out.report.hamiltonian_offdiag = diag.offdiag_norm;
  return out;
}

double commutator_defect(const ResponseMatrix& X, const PhysicalConstants& k,
                         Eigen::Index interior) {
  const Eigen::Index n = X.size();
  const Eigen::Index lim = interior_size(n, interior);
  const Eigen::MatrixXcd p = X.momentum(k.m);
  const Eigen::MatrixXcd c = X.entries * p - p * X.entries;
  double defect = 0.0;
  for (Eigen::Index a = 0; a < lim; ++a)
    for (Eigen::Index b = 0; b < lim; ++b) {
      const std::complex<double> target = a == b ? std::complex<double>(0.0, k.hbar) : 0.0;
      defect = std::max(defect, std::abs(c(a, b) - target));
    }
  return defect;
}

HamiltonianDiagnostics hamiltonian_matrix(const ResponseMatrix& X, const ForceModel& force,
                                          const PhysicalConstants& k, Eigen::Index interior) {
  const Eigen::Index n = X.size();
  const Eigen::Index lim = interior_size(n, interior);
  const Eigen::MatrixXcd p = X.momentum(k.m);
  Eigen::MatrixXcd h = p * p / (2.0 * k.m);
  h += force.potential_offset * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd xp = X.entries * X.entries;
  for (std::size_t i = 0; i < force.coeffs.size(); ++i) {
    h -= (force.coeffs[i] / static_cast<double>(i + 2)) * xp;
    if (i + 1 < force.coeffs.size()) xp = xp * X.entries;
  }
  HamiltonianDiagnostics out;
  out.H = h;
  for (Eigen::Index a = 0; a < lim; ++a)
    for (Eigen::Index b = 0; b < lim; ++b) {
      if (a != b) out.offdiag_norm = std::max(out.offdiag_norm, std::abs(h(a, b)));
      out.bohr_residual =
          std::max(out.bohr_residual, std::abs(h(a, a).real() - h(b, b).real() -
                                               k.hbar * X.omega(a, b)));
    }
  return out;
}

Eigen::MatrixXcd poissonian(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                            const RelevantAmplitudes& amplitudes) {
  if (A.rows() != A.cols() || A.rows() != B.rows() || B.rows() != B.cols() ||
      A.rows() != amplitudes.matrix.rows())
    throw ConfigError("poissonian: dimension mismatch");
  return (A * B - B * A).cwiseProduct(amplitudes.matrix);
}

}  // namespace lsed
