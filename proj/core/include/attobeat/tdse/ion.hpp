#pragma once

#include <Eigen/Dense>

#include "attobeat/tdse/grid.hpp"

namespace attobeat::tdse {

// Eigenstates of the one-electron ion -1/2 d^2/dx^2 - Z/sqrt(x^2 + a_en^2) on
// the same periodic grid and spectral kinetic operator as the 2e propagator.
// Columns of `states` are real and normalized as sum |u|^2 h = 1.
struct IonSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;
  double h = 0.0;

  int bound_count() const;
  double ground_energy() const { return energies(0); }
};

// Dense spectral kinetic matrix of the periodic grid.
Eigen::MatrixXd spectral_kinetic_matrix(const Grid2e& grid);

IonSpectrum ion_spectrum(const Grid2e& grid, const SoftCoreModel& model);

struct Thresholds {
  double I1 = 0.0;
  double I2 = 0.0;
};

// I1 = E_ion - E_0, I2 = -E_ion
Thresholds single_ion_threshold(double ground_energy, double ion_ground_energy);
Thresholds single_ion_threshold(const Grid2e& grid, const SoftCoreModel& model, double ground_energy);

// Applies (1 - P_b) x (1 - P_b), P_b the projector on ion bound states, i.e.
// removes every component where either electron occupies a bound orbital.
void remove_bound_orbitals(Wavefunction2e& psi, const IonSpectrum& ion);

}  // namespace attobeat::tdse
