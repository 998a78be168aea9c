#pragma once

#include <string>
#include <vector>

#include "attobeat/ecs/eigensolver.hpp"
#include "attobeat/resonance_set.hpp"

namespace attobeat::ecs {

// Eigenvalues near one shift, computed at several scaling angles.
struct ThetaTrajectory {
  std::vector<double> thetas;
  std::vector<std::vector<ComplexEigenpair>> pairs;  // one list per angle
};

struct ClassifyOptions {
  double bound_tol = 1e-8;          // |Im E| below this: bound
  double stability = 1e-4;          // displacement per 0.1 rad for a resonance
  std::string label_prefix = "res";
};

struct ClassifiedEigenvalue {
  cd E;                 // value at the reference (first) angle
  double displacement;  // largest |E(theta') - E(theta)| per 0.1 rad along the trajectory
  EigenTag tag;
};

struct Classification {
  std::vector<ClassifiedEigenvalue> eigenvalues;
  ResonanceSet resonances;
  double median_continuum_displacement = 0.0;
  std::vector<std::string> warnings;
};

// Tracks each eigenvalue of the first angle to its nearest partner at every
// other angle. Resonances are stable and decaying; bound states are real;
// everything else is rotated continuum. Tags are also written back into the
// eigenpairs of the reference angle.
Classification classify_and_export(ThetaTrajectory& traj, double ground_energy, const ClassifyOptions& opts = {});

}  // namespace attobeat::ecs
