#include "lsed/oracle.hpp"

#include <cmath>

#include "lsed/errors.hpp"

namespace lsed {

namespace {

// Position operator in the harmonic basis of frequency scale,
// x = sqrt(hbar / 2 m scale) (a + a^dag).
Eigen::MatrixXd position_matrix(std::size_t n, double scale, const PhysicalConstants& k) {
  const double s = std::sqrt(k.hbar / (2.0 * k.m * scale));
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double v = s * std::sqrt(static_cast<double>(i + 1));
    x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = v;
    x(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = v;
  }
  return x;
}

Eigen::MatrixXd hamiltonian_in_basis(const ForceModel& force, std::size_t n, double scale,
                                     const PhysicalConstants& k) {
  const Eigen::Index ni = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd x = position_matrix(n, scale, k);

  // p^2/2m from ladder algebra: p^2 = m hbar scale (a^dag a + 1/2) - (m scale)^2 x_offdiag part;
  // assembled directly from p = i sqrt(m hbar scale / 2)(a^dag - a).
  Eigen::MatrixXd kin = Eigen::MatrixXd::Zero(ni, ni);
  const double ps = k.m * k.hbar * scale / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    kin(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        ps * (2.0 * static_cast<double>(i) + 1.0);
    if (i + 2 < n) {
      const double v = -ps * std::sqrt(static_cast<double>((i + 1) * (i + 2)));
      kin(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 2)) = v;
      kin(static_cast<Eigen::Index>(i + 2), static_cast<Eigen::Index>(i)) = v;
    }
  }
  kin /= (2.0 * k.m);

  // V(x) = -sum_n k_n x^{n+2}/(n+2) + offset as a matrix polynomial in x.
  Eigen::MatrixXd pot = Eigen::MatrixXd::Identity(ni, ni) * force.potential_offset;
  Eigen::MatrixXd xp = x * x;
  for (std::size_t i = 0; i < force.coeffs.size(); ++i) {
    pot -= (force.coeffs[i] / static_cast<double>(i + 2)) * xp;
    if (i + 1 < force.coeffs.size()) xp = xp * x;
  }
  return kin + pot;
}

}  // namespace

DiagonalizeResult diagonalize(const ForceModel& force, const BasisSpec& basis,
                              const PhysicalConstants& constants, double level_tol) {
  basis.validate();
  force.validate_confining();
  const Eigen::Index nlev = static_cast<Eigen::Index>(basis.size);

  std::size_t work = std::max<std::size_t>(4 * basis.size, 32);
  Eigen::VectorXd prev;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Eigen::MatrixXd h = hamiltonian_in_basis(force, work, basis.scale, constants);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
      throw NumericalError("diagonalize: eigensolver failed");
    Eigen::VectorXd ev = es.eigenvalues().head(nlev);
    if (prev.size() == nlev) {
      const double scale_ref = std::max(1.0, ev.cwiseAbs().maxCoeff());
      if ((ev - prev).cwiseAbs().maxCoeff() <= level_tol * scale_ref) {
        const Eigen::MatrixXd x = position_matrix(work, basis.scale, constants);
        const Eigen::MatrixXd u = es.eigenvectors().leftCols(nlev);
        DiagonalizeResult out;
        out.eigenvalues = ev;
        out.position_elements = u.transpose() * x * u;
        out.working_basis = work;
        return out;
      }
    }
    prev = ev;
    work *= 2;
  }
  throw NumericalError("diagonalize: spectrum not converged under basis doubling");
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (std::abs(a) + std::abs(b)))
    return left + right + delta / 15.0;
  if (depth <= 0) throw NumericalError("quad_integrate: recursion limit reached");
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double quad_integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  if (!(tol > 0.0)) throw ConfigError("quad_integrate: tolerance must be positive");
  const double fa = f(a), fb = f(b);
  const double m = 0.5 * (a + b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  return adaptive(f, a, fa, b, fb, m, fm, whole, tol, 60);
}

}  // namespace lsed
