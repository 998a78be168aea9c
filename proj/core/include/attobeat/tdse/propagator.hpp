#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "attobeat/pulse.hpp"
#include "attobeat/tdse/fft.hpp"
#include "attobeat/tdse/grid.hpp"

namespace attobeat::tdse {

// Multiplicative cos^p mask over the outermost `width` a.u. of each axis.
struct Absorber {
  double width = 10.0;
  double power = 0.125;
};

struct PropagatorOptions {
  double dt = 0.05;
  bool absorbing = false;
  Absorber absorber{};
};

// Strang splitting exp(-iV dt/2) exp(-iT dt) exp(-iV dt/2), kinetic part
// applied spectrally, dipole coupling F(t)(x1 + x2) in length gauge with the
// field evaluated at mid-step.
class SplitOperator {
 public:
  SplitOperator(const Grid2e& grid, const SoftCoreModel& model, const PropagatorOptions& opts);

  const Grid2e& grid() const { return grid_; }
  const SoftCoreModel& model() const { return model_; }
  double dt() const { return opts_.dt; }
  bool absorbing() const { return opts_.absorbing; }

  // One step of length dt starting at time t.
  void step(Wavefunction2e& psi, double field) const;

  // Advance from t0 to t1 under the given pulses. Whole steps of dt are taken;
  // a trailing partial step covers any remainder. Returns the step count.
  // Throws PropagationError on a non-finite or growing norm.
  long propagate(Wavefunction2e& psi, const std::vector<Pulse>& pulses, double t0, double t1) const;

  // Field-free <psi|H|psi> / <psi|psi>, spectral kinetic energy.
  double energy(const Wavefunction2e& psi) const;
  // H psi with the exact (spectral) kinetic operator; field optional.
  void apply_hamiltonian(const Wavefunction2e& psi, Wavefunction2e& out, double field = 0.0) const;

  const Fft2& fft() const { return *fft_; }
  const std::vector<double>& potential() const { return V_; }
  const std::vector<double>& mask() const { return mask_; }

 private:
  void step_with(Wavefunction2e& psi, double field, double dt, const cvec* kin_phase) const;

  Grid2e grid_;
  SoftCoreModel model_;
  PropagatorOptions opts_;
  std::shared_ptr<Fft2> fft_;
  std::vector<double> x_, k2_, V_, mask_;
  cvec halfV_;      // exp(-i V dt/2), n*n
  cvec kin_phase_;  // exp(-i k1^2 dt/2) exp(-i k2^2 dt/2) / n^2, n*n
};

// Upper bound on the width of the grid Hamiltonian spectrum: the largest
// kinetic energy plus the range of the potential.
double max_spectral_span(const Grid2e& grid, const SoftCoreModel& model);

// Time-domain energy filter \sum_t w(t) e^{iEt} U(t) psi with a sin^4
// window of length `duration`. Applied `passes` times, re-estimating E from
// the one-step phase; the result is an eigenvector of the discrete
// propagator to high accuracy. Returns the filtered, normalized state.
Wavefunction2e stationary_filter(const SplitOperator& prop, const Wavefunction2e& psi, double energy,
                                 double duration = 60.0, int passes = 2);

// Energy for which e^{-i E dt} is the one-step phase of psi.
double propagator_phase_energy(const SplitOperator& prop, const Wavefunction2e& psi);

}  // namespace attobeat::tdse
