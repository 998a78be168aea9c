#include "attobeat/interior.hpp"

#include <cmath>
#include <numbers>

#include "attobeat/errors.hpp"

namespace attobeat {

InteriorState restrict_to(const tdse::Wavefunction2e& psi, double R) {
  const auto& g = psi.grid();
  std::vector<int> idx;
  InteriorState out;
  out.h = g.h();
  for (int i = 0; i < g.n; ++i)
    if (std::abs(g.x(i)) <= R + 1e-12) {
      idx.push_back(i);
      out.x.push_back(g.x(i));
    }
  if (idx.empty()) throw DomainError("interior region contains no grid points");
  const int m = static_cast<int>(idx.size());
  out.psi.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.psi(a, b) = psi(idx[a], idx[b]);
  return out;
}

Eigen::MatrixXd trig_interpolation_matrix(const tdse::Grid2e& grid, const std::vector<double>& nodes) {
  const int n = grid.n;
  const double h = grid.h();
  Eigen::MatrixXd A(nodes.size(), n);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    if (std::abs(nodes[a]) > grid.L + 1e-12) throw DomainError("interpolation node outside the grid");
    for (int j = 0; j < n; ++j) {
      const double d = (nodes[a] - grid.x(j)) / h;  // in grid units
      const double s = std::sin(std::numbers::pi * d);
      if (std::abs(d - std::round(d)) < 1e-13) {
        A(a, j) = std::lround(d) % n == 0 ? 1.0 : 0.0;
        continue;
      }
      const double t = std::numbers::pi * d / n;
      A(a, j) = n % 2 == 0 ? s / (n * std::tan(t)) : s / (n * std::sin(t));
    }
  }
  return A;
}

InteriorState resample(const tdse::Wavefunction2e& psi, const std::vector<double>& nodes) {
  if (nodes.size() < 2) throw DomainError("resampling needs at least two nodes");
  InteriorState out;
  out.x = nodes;
  out.h = nodes[1] - nodes[0];
  const Eigen::MatrixXcd A = trig_interpolation_matrix(psi.grid(), nodes).cast<tdse::cd>();
  out.psi = A * psi.matrix() * A.transpose();
  return out;
}

}  // namespace attobeat
