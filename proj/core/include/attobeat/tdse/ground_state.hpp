#pragma once

#include "attobeat/tdse/grid.hpp"

namespace attobeat::tdse {

struct GroundStateOptions {
  double imaginary_dt = 0.05;
  int imaginary_max_steps = 6000;
  double imaginary_tol = 1e-7;  // energy change per check interval
  int krylov_dim = 16;
  int max_restarts = 400;
  double residual_tol = 1e-7;  // ||H psi - E psi||
};

struct GroundState {
  double energy = 0.0;
  Wavefunction2e psi;
  double residual = 0.0;
  int restarts = 0;
};

// Lowest exchange-symmetric eigenpair of the grid Hamiltonian with spectral
// kinetic energy: imaginary-time split-operator warm-up, then restarted
// Lanczos on the exact discrete operator. Throws ConvergenceError.
GroundState ground_state(const Grid2e& grid, const SoftCoreModel& model, const GroundStateOptions& opts = {});

}  // namespace attobeat::tdse
