#include "attobeat/ecs/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "attobeat/errors.hpp"

namespace attobeat::ecs {

namespace {

cd v_en(const SoftCoreModel& m, cd z) { return -m.Z / std::sqrt(z * z + m.a_en * m.a_en); }

cd v_ee(const SoftCoreModel& m, cd d) {
  return m.interacting ? 1.0 / std::sqrt(d * d + m.a_ee * m.a_ee) : cd(0.0);
}

}  // namespace

void ScalingContour::validate(double L) const {
  if (!(theta > 0.0 && theta < std::numbers::pi / 4.0) && theta != 0.0)
    throw DomainError("scaling angle must lie in (0, pi/4)");
  if (!(R0 > 0.0)) throw DomainError("scaling radius must be positive");
  if (R0 >= L) throw DomainError("scaling radius R0 = " + std::to_string(R0) + " must be below the grid extent L = " +
                                 std::to_string(L));
}

cd ScalingContour::map(double x) const {
  const double a = std::abs(x);
  if (a <= R0) return x;
  return std::copysign(1.0, x) * (R0 + (a - R0) * std::polar(1.0, theta));
}

EcsAxis make_axis(const Grid2e& grid, const ScalingContour& contour) {
  grid.validate();
  contour.validate(grid.L);
  EcsAxis ax;
  const int n = grid.n;
  ax.h = grid.h();
  ax.theta = contour.theta;
  const int kr = static_cast<int>(std::lround((contour.R0 + grid.L) / ax.h));
  ax.kink_right = kr;
  ax.kink_left = n - 1 - kr;
  if (ax.kink_left >= ax.kink_right || kr >= n - 1) throw DomainError("scaling radius does not fit the grid");
  ax.R0 = grid.x(kr);
  ScalingContour snapped{ax.R0, contour.theta};
  ax.x = grid.coordinates();
  // keep the exact mirror symmetry of the node set
  for (int i = 0; i < n / 2; ++i) ax.x[n - 1 - i] = -ax.x[i];
  if (n % 2 == 1) ax.x[n / 2] = 0.0;
  ax.z.resize(n);
  for (int i = 0; i < n; ++i) ax.z[i] = (i < ax.kink_left || i > ax.kink_right) ? snapped.map(ax.x[i]) : cd(ax.x[i]);
  ax.weight.assign(n, 0.0);
  for (int e = 0; e + 1 < n; ++e) {
    const cd he = ax.z[e + 1] - ax.z[e];
    ax.weight[e] += 0.5 * he;
    ax.weight[e + 1] += 0.5 * he;
  }
  return ax;
}

std::vector<cd> fornberg_weights(cd z0, const std::vector<cd>& nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<cd>> c(n, std::vector<cd>(m + 1, 0.0));
  cd c1 = 1.0;
  cd c4 = nodes[0] - z0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    cd c2 = 1.0;
    const cd c5 = c4;
    c4 = nodes[i] - z0;
    for (int j = 0; j < i; ++j) {
      const cd c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (double(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - double(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<cd> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

Eigen::MatrixXcd kinetic_matrix(const EcsAxis& ax, int order) {
  if (order != 2 && order != 4) throw DomainError("kinetic stencil order must be 2 or 4");
  const int n = ax.n();
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n - 1, n);
  std::vector<cd> hs(n - 1);
  for (int e = 0; e + 1 < n; ++e) hs[e] = ax.z[e + 1] - ax.z[e];

  auto coord = [&](int i) -> cd {
    // ghost nodes beyond the ends carry zero amplitude
    if (i < 0) return ax.z[0] + double(i) * hs[0];
    if (i >= n) return ax.z[n - 1] + double(i - n + 1) * hs[n - 2];
    return ax.z[i];
  };

  for (int e = 0; e + 1 < n; ++e) {
    const cd zm = 0.5 * (ax.z[e] + ax.z[e + 1]);
    std::vector<int> idx;
    if (order == 2) {
      idx = {e, e + 1};
    } else {
      idx = {e - 1, e, e + 1, e + 2};
      for (int k : {ax.kink_left, ax.kink_right}) {
        if (e + 1 == k) idx = {e - 2, e - 1, e, e + 1};
        if (e == k) idx = {e, e + 1, e + 2, e + 3};
      }
    }
    std::vector<cd> nodes;
    for (int i : idx) nodes.push_back(coord(i));
    const auto w = fornberg_weights(zm, nodes, 1);
    for (std::size_t a = 0; a < idx.size(); ++a)
      if (idx[a] >= 0 && idx[a] < n) D(e, idx[a]) += w[a];
  }
  Eigen::MatrixXcd K = 0.5 * D.transpose() * Eigen::Map<Eigen::VectorXcd>(hs.data(), n - 1).asDiagonal() * D;
  Eigen::VectorXcd isw(n);
  for (int i = 0; i < n; ++i) isw(i) = 1.0 / std::sqrt(ax.weight[i]);
  K = isw.asDiagonal() * K * isw.asDiagonal();
  // clean round-off outside the band
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) > order) K(i, j) = 0.0;
  return K;
}

EcsHamiltonian build_ecs_hamiltonian(const Grid2e& grid, const SoftCoreModel& model, const ScalingContour& contour,
                                     int order) {
  model.validate();
  EcsHamiltonian H;
  H.axis = make_axis(grid, contour);
  H.model = model;
  H.kinetic = kinetic_matrix(H.axis, order);
  const int n = H.axis.n();
  const auto& K = H.kinetic;
  std::vector<Eigen::Triplet<cd>> trip;
  trip.reserve(static_cast<std::size_t>(n) * n * (4 * order + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int row = i * n + j;
      const cd* z = H.axis.z.data();
      trip.emplace_back(row, row, K(i, i) + K(j, j) + v_en(model, z[i]) + v_en(model, z[j]) + v_ee(model, z[i] - z[j]));
      for (int d = 1; d <= order; ++d) {
        if (i - d >= 0 && K(i, i - d) != 0.0) trip.emplace_back(row, (i - d) * n + j, K(i, i - d));
        if (i + d < n && K(i, i + d) != 0.0) trip.emplace_back(row, (i + d) * n + j, K(i, i + d));
        if (j - d >= 0 && K(j, j - d) != 0.0) trip.emplace_back(row, i * n + j - d, K(j, j - d));
        if (j + d < n && K(j, j + d) != 0.0) trip.emplace_back(row, i * n + j + d, K(j, j + d));
      }
    }
  }
  H.matrix.resize(n * n, n * n);
  H.matrix.setFromTriplets(trip.begin(), trip.end());
  H.matrix.makeCompressed();
  return H;
}

double EcsHamiltonian::asymmetry() const {
  const Eigen::SparseMatrix<cd> T = matrix.transpose();
  const Eigen::SparseMatrix<cd> diff = matrix - T;
  double m = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (Eigen::SparseMatrix<cd>::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

Eigen::MatrixXcd build_ecs_ion(const EcsAxis& axis, const SoftCoreModel& model, int order) {
  Eigen::MatrixXcd H = kinetic_matrix(axis, order);
  for (int i = 0; i < axis.n(); ++i) H(i, i) += v_en(model, axis.z[i]);
  return H;
}

cd c_product(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (u.size() != v.size()) throw StructuralError("c-product of vectors with different sizes");
  return (u.array() * v.array()).sum();
}

Eigen::MatrixXcd to_amplitude(const EcsAxis& axis, const Eigen::VectorXcd& u) {
  const int n = axis.n();
  if (u.size() != static_cast<Eigen::Index>(n) * n) throw StructuralError("vector does not match the ECS grid");
  Eigen::MatrixXcd psi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) psi(i, j) = u(i * n + j) / std::sqrt(axis.weight[i] * axis.weight[j]);
  return psi;
}

}  // namespace attobeat::ecs
