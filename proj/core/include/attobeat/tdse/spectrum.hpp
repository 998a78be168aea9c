#pragma once

#include <vector>

#include <Eigen/Dense>

#include "attobeat/essential_states.hpp"
#include "attobeat/tdse/grid.hpp"

namespace attobeat::tdse {

// Double-ionization region |x1| > R and |x2| > R, entered through a sin^2
// ramp of width w.
struct DIRegionSpec {
  double R = 10.0;
  double width = 4.0;
};

// |psi~(k1,k2)|^2 dk1 dk2 per momentum bin, k ascending.
struct MomentumSpectrum {
  std::vector<double> k;
  double dk = 0.0;
  Eigen::MatrixXd P;

  double total() const { return P.sum(); }
  double energy(int i) const { return 0.5 * k[i] * k[i]; }
};

MomentumSpectrum di_spectrum(const Wavefunction2e& psi, const DIRegionSpec& region);

// 1/2 [ sum_{e1 in W} + sum_{e2 in W} ] P, so a window covering every
// momentum bin returns the total DI probability.
double windowed_yield(const MomentumSpectrum& spec, const EnergyWindow& window);

// Rebins P(k1,k2) onto an energy grid (both signs of k share a bin); bins
// outside the axis are dropped.
Eigen::MatrixXd energy_map(const MomentumSpectrum& spec, const EnergyAxis& axis);

}  // namespace attobeat::tdse
