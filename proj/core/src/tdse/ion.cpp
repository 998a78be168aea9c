#include "attobeat/tdse/ion.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "attobeat/errors.hpp"

namespace attobeat::tdse {

int IonSpectrum::bound_count() const {
  int c = 0;
  while (c < energies.size() && energies(c) < 0.0) ++c;
  return c;
}

Eigen::MatrixXd spectral_kinetic_matrix(const Grid2e& grid) {
  const int n = grid.n;
  const double h = grid.h();
  // T_ij = (1/n) sum_m k_m^2/2 cos(k_m (i-j) h), a function of |i-j| only
  Eigen::VectorXd t(n);
  for (int d = 0; d < n; ++d) {
    double s = 0.0;
    for (int m = 0; m < n; ++m) {
      const double k = grid.k(m);
      s += 0.5 * k * k * std::cos(k * d * h);
    }
    t(d) = s / n;
  }
  Eigen::MatrixXd T(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) T(i, j) = t(std::abs(i - j));
  return T;
}

IonSpectrum ion_spectrum(const Grid2e& grid, const SoftCoreModel& model) {
  grid.validate();
  model.validate();
  Eigen::MatrixXd H = spectral_kinetic_matrix(grid);
  for (int i = 0; i < grid.n; ++i) H(i, i) += model.v_en(grid.x(i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw ConvergenceError("ion eigensolver failed", NAN);
  IonSpectrum out;
  out.h = grid.h();
  out.energies = es.eigenvalues();
  out.states = es.eigenvectors() / std::sqrt(out.h);
  for (int c = 0; c < out.states.cols(); ++c) {
    Eigen::Index imax = 0;
    out.states.col(c).cwiseAbs().maxCoeff(&imax);
    if (out.states(imax, c) < 0.0) out.states.col(c) *= -1.0;
  }
  return out;
}

Thresholds single_ion_threshold(double ground_energy, double ion_ground_energy) {
  return {ion_ground_energy - ground_energy, -ion_ground_energy};
}

Thresholds single_ion_threshold(const Grid2e& grid, const SoftCoreModel& model, double ground_energy) {
  return single_ion_threshold(ground_energy, ion_spectrum(grid, model).ground_energy());
}

void remove_bound_orbitals(Wavefunction2e& psi, const IonSpectrum& ion) {
  const int nb = ion.bound_count();
  if (nb == 0) return;
  const int n = psi.n();
  if (ion.states.rows() != n) throw StructuralError("ion basis does not match the wavefunction grid");
  const Eigen::MatrixXcd U = ion.states.leftCols(nb).cast<cd>();
  Eigen::MatrixXcd P = psi.matrix();
  // Q P Q^T with Q = 1 - h U U^T (symmetric)
  Eigen::MatrixXcd A = P - ion.h * U * (U.transpose() * P);
  Eigen::MatrixXcd B = A - ion.h * (A * U) * U.transpose();
  psi.matrix() = B;
}

}  // namespace attobeat::tdse
