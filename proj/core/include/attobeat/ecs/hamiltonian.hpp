#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "attobeat/tdse/grid.hpp"

namespace attobeat::ecs {

using cd = std::complex<double>;
using tdse::Grid2e;
using tdse::SoftCoreModel;

// x -> sign(x) (R0 + (|x| - R0) e^{i theta}) for |x| > R0.
struct ScalingContour {
  double R0 = 30.0;
  double theta = 0.3;

  void validate(double L) const;
  cd map(double x) const;
};

// Scaled 1D axis. R0 is moved onto the nearest grid node so the kink sits on
// a node; `R0` holds that effective radius.
struct EcsAxis {
  std::vector<double> x;
  std::vector<cd> z;
  std::vector<cd> weight;  // complex trapezoid weights (h_{i-1} + h_i)/2
  double h = 0.0;
  double R0 = 0.0;
  double theta = 0.0;
  int kink_left = 0;   // node index of -R0
  int kink_right = 0;  // node index of +R0

  int n() const { return static_cast<int>(x.size()); }
  bool interior(int i) const { return i >= kink_left && i <= kink_right; }
};

EcsAxis make_axis(const Grid2e& grid, const ScalingContour& contour);

// Symmetrized kinetic matrix W^{-1/2} (D^T M D / 2) W^{-1/2}: D is a staggered
// first derivative (Fornberg weights on the complex nodes, one-sided at the
// kink), M the complex half-step lengths. Complex symmetric by construction.
Eigen::MatrixXcd kinetic_matrix(const EcsAxis& axis, int order = 4);

// Fornberg finite-difference weights for derivative `m` at z0.
std::vector<cd> fornberg_weights(cd z0, const std::vector<cd>& nodes, int m);

// Complex-scaled two-electron Hamiltonian in symmetrized coordinates
// u = sqrt(w1 w2) psi, so that the c-product is the plain bilinear sum.
struct EcsHamiltonian {
  EcsAxis axis;
  SoftCoreModel model;
  Eigen::MatrixXcd kinetic;          // 1D, n x n
  Eigen::SparseMatrix<cd> matrix;    // n^2 x n^2, index i*n + j

  int n() const { return axis.n(); }
  // max |H - H^T| over stored entries
  double asymmetry() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& u) const { return matrix * u; }
};

EcsHamiltonian build_ecs_hamiltonian(const Grid2e& grid, const SoftCoreModel& model, const ScalingContour& contour,
                                     int order = 4);

// One-electron ion on the same scaled axis (dense, symmetrized coordinates).
Eigen::MatrixXcd build_ecs_ion(const EcsAxis& axis, const SoftCoreModel& model, int order = 4);

// (u|v) = sum u v: in symmetrized coordinates the complex volume element is
// already absorbed. Throws StructuralError on size mismatch.
cd c_product(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

// psi(x1, x2) = u / sqrt(w1 w2), as an n x n row-major matrix.
Eigen::MatrixXcd to_amplitude(const EcsAxis& axis, const Eigen::VectorXcd& u);

}  // namespace attobeat::ecs
