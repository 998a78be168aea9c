#include "attobeat/ecs/projection.hpp"

#include "attobeat/errors.hpp"

namespace attobeat::ecs {

Eigen::MatrixXcd interior_function(const EcsHamiltonian& H, const ComplexEigenpair& p) {
  const auto& ax = H.axis;
  const int a = ax.kink_left, m = ax.kink_right - ax.kink_left + 1;
  return to_amplitude(ax, p.u).block(a, a, m, m);
}

InteriorState QuasiBoundProjection::evolve(double t) const {
  InteriorState s;
  s.x = x;
  s.h = h;
  const int m = static_cast<int>(x.size());
  s.psi = Eigen::MatrixXcd::Zero(m, m);
  for (std::size_t k = 0; k < functions.size(); ++k)
    s.psi += coefficients[k] * std::exp(cd(0.0, -1.0) * energies[k] * t) * functions[k];
  return s;
}

double QuasiBoundProjection::population() const {
  double s = 0.0;
  for (const cd& c : coefficients) s += std::norm(c);
  return s;
}

QuasiBoundProjection quasi_bound_projection(const InteriorState& psi, const EcsHamiltonian& H,
                                            const std::vector<ComplexEigenpair>& pairs) {
  const auto& ax = H.axis;
  const int m = ax.kink_right - ax.kink_left + 1;
  if (psi.psi.rows() != m || psi.psi.cols() != m) throw StructuralError("interior state does not match the ECS interior");
  QuasiBoundProjection out;
  out.x.assign(ax.x.begin() + ax.kink_left, ax.x.begin() + ax.kink_right + 1);
  out.h = ax.h;
  const std::size_t K = pairs.size();
  const double area = ax.h * ax.h;
  for (const auto& p : pairs) {
    out.functions.push_back(interior_function(H, p));
    out.energies.push_back(p.E);
  }
  if (K == 0) return out;
  Eigen::MatrixXcd G(K, K);
  Eigen::VectorXcd b(K);
  for (std::size_t i = 0; i < K; ++i) {
    b(i) = (out.functions[i].array() * psi.psi.array()).sum() * area;
    for (std::size_t j = i; j < K; ++j) {
      G(i, j) = (out.functions[i].array() * out.functions[j].array()).sum() * area;
      G(j, i) = G(i, j);
    }
  }
  const Eigen::VectorXcd c = G.fullPivLu().solve(b);
  out.coefficients.assign(c.data(), c.data() + K);
  return out;
}

QuasiBoundProjection quasi_bound_projection(const tdse::Wavefunction2e& psi, const EcsHamiltonian& H,
                                            const std::vector<ComplexEigenpair>& pairs) {
  const auto& ax = H.axis;
  std::vector<double> nodes(ax.x.begin() + ax.kink_left, ax.x.begin() + ax.kink_right + 1);
  return quasi_bound_projection(resample(psi, nodes), H, pairs);
}

}  // namespace attobeat::ecs
