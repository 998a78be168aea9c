#pragma once

#include <vector>

#include <Eigen/Dense>

#include "attobeat/tdse/grid.hpp"

namespace attobeat {

// Two-electron amplitude on a uniform real grid covering the interior region
// (no complex scaling); psi(i, j) = psi(x_i, x_j).
struct InteriorState {
  std::vector<double> x;
  double h = 0.0;
  Eigen::MatrixXcd psi;

  double norm() const { return psi.squaredNorm() * h * h; }
};

// Grid points of the propagation grid with |x| <= R.
InteriorState restrict_to(const tdse::Wavefunction2e& psi, double R);

// Band-limited (trigonometric) interpolation of the periodic grid function
// onto arbitrary nodes inside [-L, L].
InteriorState resample(const tdse::Wavefunction2e& psi, const std::vector<double>& nodes);

// Interpolation matrix A with f(nodes) = A f(grid) for the periodic grid.
Eigen::MatrixXd trig_interpolation_matrix(const tdse::Grid2e& grid, const std::vector<double>& nodes);

}  // namespace attobeat
