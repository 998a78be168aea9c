#include "attobeat/analysis/observables.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "attobeat/errors.hpp"

namespace attobeat::analysis {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXd r12inv2(const InteriorState& s, const SoftCoreModel& m) {
  const int n = static_cast<int>(s.x.size());
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = s.x[i] - s.x[j];
      w(i, j) = 1.0 / (d * d + m.a_ee * m.a_ee);
    }
  return w;
}

void check(const InteriorState& s) {
  if (s.x.size() < 5) throw StructuralError("interior grid needs at least five points");
  if (s.psi.rows() != static_cast<Eigen::Index>(s.x.size()) || s.psi.cols() != s.psi.rows())
    throw StructuralError("interior amplitude does not match its grid");
}

// d/dx along rows (axis 0) of a square matrix
Eigen::MatrixXcd derivative_fd4(const Eigen::MatrixXcd& f, double h) {
  const Eigen::Index n = f.rows();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, f.cols());
  auto at = [&](Eigen::Index i) -> Eigen::RowVectorXcd {
    if (i < 0 || i >= n) return Eigen::RowVectorXcd::Zero(f.cols());
    return f.row(i);
  };
  for (Eigen::Index i = 0; i < n; ++i)
    d.row(i) = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
  return d;
}

Eigen::MatrixXcd derivative_spectral(const Eigen::MatrixXcd& f, double h) {
  // dense DFT derivative matrix of the periodic box
  const Eigen::Index n = f.rows();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = std::numbers::pi * static_cast<double>(i - j) / static_cast<double>(n);
      const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = n % 2 == 0 ? sign * std::numbers::pi / (n * h) / std::tan(d) : sign * std::numbers::pi / (n * h) / std::sin(d);
    }
  return D.cast<cd>() * f;
}

}  // namespace

double expval_r12inv2(const InteriorState& s, const SoftCoreModel& model) {
  check(s);
  return (s.psi.cwiseAbs2().cwiseProduct(r12inv2(s, model))).sum() * s.h * s.h;
}

Eigen::MatrixXcd apply_mu(const InteriorState& s, Derivative scheme) {
  check(s);
  const auto deriv = scheme == Derivative::FourthOrder ? derivative_fd4 : derivative_spectral;
  const Eigen::MatrixXcd d1 = deriv(s.psi, s.h);
  const Eigen::MatrixXcd d2 = deriv(s.psi.transpose(), s.h).transpose();
  return cd(0.0, -1.0) * (d1 + d2);
}

double expval_mu2r12inv2(const InteriorState& s, const SoftCoreModel& model, Derivative scheme) {
  const Eigen::MatrixXcd mu = apply_mu(s, scheme);
  return (mu.cwiseAbs2().cwiseProduct(r12inv2(s, model))).sum() * s.h * s.h;
}

ContinuumBasis ion_box_basis(const InteriorState& grid, const SoftCoreModel& model) {
  const int n = static_cast<int>(grid.x.size());
  const double h = grid.h;
  Eigen::MatrixXd H(n, n);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        H(i, j) = pi2 / (6.0 * h * h) + model.v_en(grid.x[i]);
      } else {
        const double d = i - j;
        H(i, j) = ((i - j) % 2 == 0 ? 1.0 : -1.0) / (d * d * h * h);
      }
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  ContinuumBasis b;
  b.energies = es.eigenvalues();
  b.states = es.eigenvectors() / std::sqrt(h);
  b.h = h;
  return b;
}

double ts1_probability(const InteriorState& s, const EnergyWindow& window, const SoftCoreModel& model,
                       const ContinuumBasis& basis) {
  if (window.hi == window.lo) return 0.0;
  window.validate();
  if (basis.states.rows() != static_cast<Eigen::Index>(s.x.size()))
    throw StructuralError("continuum basis does not match the interior grid");
  if (window.hi > basis.energies(basis.energies.size() - 1))
    throw DomainError("continuum basis does not cover the energy window");
  std::vector<int> in_window, positive;
  for (int a = 0; a < basis.energies.size(); ++a) {
    if (basis.energies(a) <= 0.0) continue;
    positive.push_back(a);
    if (basis.energies(a) >= window.lo && basis.energies(a) < window.hi) in_window.push_back(a);
  }
  if (in_window.empty()) return 0.0;
  const Eigen::MatrixXcd mu = apply_mu(s, Derivative::FourthOrder);
  const int n = static_cast<int>(s.x.size());
  Eigen::MatrixXcd phi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = s.x[i] - s.x[j];
      phi(i, j) = mu(i, j) / std::sqrt(d * d + model.a_ee * model.a_ee);
    }
  Eigen::MatrixXd Ua(n, in_window.size()), Ub(n, positive.size());
  for (std::size_t k = 0; k < in_window.size(); ++k) Ua.col(k) = basis.states.col(in_window[k]);
  for (std::size_t k = 0; k < positive.size(); ++k) Ub.col(k) = basis.states.col(positive[k]);
  const Eigen::MatrixXcd A = (Ua.transpose().cast<cd>() * phi * Ub.cast<cd>()) * (s.h * s.h);
  return A.squaredNorm();
}

double ts1_probability(const InteriorState& s, const EnergyWindow& window, const SoftCoreModel& model) {
  return ts1_probability(s, window, model, ion_box_basis(s, model));
}

}  // namespace attobeat::analysis
