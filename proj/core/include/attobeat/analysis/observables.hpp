#pragma once

#include "attobeat/essential_states.hpp"
#include "attobeat/interior.hpp"
#include "attobeat/tdse/grid.hpp"

namespace attobeat::analysis {

using tdse::SoftCoreModel;

enum class Derivative { FourthOrder, Spectral };

// <psi| r12^-2 |psi> with r12^2 = (x1 - x2)^2 + a_ee^2; not normalized.
double expval_r12inv2(const InteriorState& psi, const SoftCoreModel& model);

// <mu psi| r12^-2 |mu psi>, mu = -i (d/dx1 + d/dx2); not normalized.
double expval_mu2r12inv2(const InteriorState& psi, const SoftCoreModel& model,
                         Derivative scheme = Derivative::FourthOrder);

// mu psi on the interior grid. Fourth-order centred differences treat points
// beyond the edge as zero; the spectral variant uses the DFT of the box.
Eigen::MatrixXcd apply_mu(const InteriorState& psi, Derivative scheme);

// Box-normalized eigenstates of the one-electron ion on the interior grid
// (sinc-DVR kinetic energy, Dirichlet walls).
struct ContinuumBasis {
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;  // columns, sum |u|^2 h = 1
  double h = 0.0;
};

ContinuumBasis ion_box_basis(const InteriorState& grid, const SoftCoreModel& model);

// sum_{a: e_a in W} sum_{b: e_b > 0} |<ab| r12^-1 mu |psi>|^2 over uncorrelated
// products of positive-energy ion states. Meaningful up to normalization.
// Throws DomainError if the window reaches above the basis.
double ts1_probability(const InteriorState& psi, const EnergyWindow& window, const SoftCoreModel& model,
                       const ContinuumBasis& basis);
double ts1_probability(const InteriorState& psi, const EnergyWindow& window, const SoftCoreModel& model);

}  // namespace attobeat::analysis
