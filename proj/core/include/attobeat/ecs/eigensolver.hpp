#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attobeat/ecs/hamiltonian.hpp"

namespace attobeat::ecs {

enum class Exchange { Symmetric, Antisymmetric, Any };
enum class Parity { Even, Odd, Any };
enum class EigenTag { Unclassified, Bound, Resonance, RotatedContinuum };

std::string to_string(EigenTag tag);

struct ComplexEigenpair {
  cd E;
  Eigen::VectorXcd u;  // symmetrized coordinates, (u|u) = 1
  double residual = 0.0;  // ||H u - E u|| / ||u||
  EigenTag tag = EigenTag::Unclassified;
};

struct EigenOptions {
  Exchange exchange = Exchange::Symmetric;
  Parity parity = Parity::Any;
  int krylov_dim = 0;  // 0: max(2 count + 20, 40)
  int max_restarts = 12;
  double tol = 1e-10;  // relative residual
  unsigned long long seed = 12345;
};

// Projects onto the requested exchange / parity sector in place.
void project_sector(Eigen::VectorXcd& u, int n, Exchange ex, Parity par);

// `count` eigenpairs nearest `shift` by shift-invert Arnoldi on a sparse LU
// of H - shift, restricted to a symmetry sector. Sorted by distance to the
// shift. Throws ConvergenceError when the factorization fails or the
// residuals stay above tol; the error carries the worst residual.
std::vector<ComplexEigenpair> eigenpairs_near(const EcsHamiltonian& H, cd shift, int count,
                                              const EigenOptions& opts = {});

// max off-diagonal |(u_i|u_j)|
double c_orthogonality_defect(const std::vector<ComplexEigenpair>& pairs);

}  // namespace attobeat::ecs
