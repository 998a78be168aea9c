#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "attobeat/ecs/eigensolver.hpp"
#include "attobeat/interior.hpp"
#include "attobeat/tdse/grid.hpp"

namespace attobeat::ecs {

// psi_beta = sum_m c_m psi_m restricted to |x| <= R0. The coefficients solve
// the interior c-product Gram system G c = b, b_m = (psi_m|psi)_int, so a
// state built from the functions is recovered exactly despite truncation.
struct QuasiBoundProjection {
  std::vector<cd> coefficients;
  std::vector<cd> energies;                 // absolute E_m
  std::vector<Eigen::MatrixXcd> functions;  // interior amplitudes psi_m
  std::vector<double> x;
  double h = 0.0;

  // sum_m c_m e^{-i E_m t} psi_m: the field-free interior wavepacket t later
  InteriorState evolve(double t) const;
  InteriorState psi_beta() const { return evolve(0.0); }
  // sum |c_m|^2 (populations; not a norm of the non-orthogonal set)
  double population() const;
};

// Interior amplitude of an eigenpair on the interior nodes of the ECS grid.
Eigen::MatrixXcd interior_function(const EcsHamiltonian& H, const ComplexEigenpair& p);

QuasiBoundProjection quasi_bound_projection(const InteriorState& psi, const EcsHamiltonian& H,
                                            const std::vector<ComplexEigenpair>& pairs);
// Resamples the propagation-grid state onto the interior ECS nodes first.
QuasiBoundProjection quasi_bound_projection(const tdse::Wavefunction2e& psi, const EcsHamiltonian& H,
                                            const std::vector<ComplexEigenpair>& pairs);

}  // namespace attobeat::ecs
