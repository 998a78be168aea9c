#include <doctest.h>

#include <cmath>
#include <numbers>

#include "attobeat/ecs/eigensolver.hpp"
#include "attobeat/ecs/projection.hpp"
#include "attobeat/interior.hpp"

using namespace attobeat;
using namespace attobeat::ecs;

TEST_CASE("trigonometric interpolation is exact for grid harmonics") {
  const tdse::Grid2e g{64, 10.0};
  const double k = 3 * g.k(1);
  tdse::Wavefunction2e psi(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) psi(i, j) = std::polar(1.0, k * (g.x(i) - 2.0 * g.x(j)));
  const std::vector<double> nodes{-9.3, -1.234, 0.0, 0.77, 5.5};
  const auto s = resample(psi, nodes);
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = 0; b < nodes.size(); ++b)
      CHECK(std::abs(s.psi(a, b) - std::polar(1.0, k * (nodes[a] - 2.0 * nodes[b]))) < 1e-11);

  const auto A = trig_interpolation_matrix(g, g.coordinates());
  CHECK((A - Eigen::MatrixXd::Identity(g.n, g.n)).cwiseAbs().maxCoeff() < 1e-12);

  const auto r = restrict_to(psi, 3.0);
  for (double x : r.x) CHECK(std::abs(x) <= 3.0);
  CHECK(r.h == doctest::Approx(g.h()));
}

TEST_CASE("quasi-bound projection recovers a combination exactly") {
  const tdse::Grid2e g{64, 12.0};
  const auto H = build_ecs_hamiltonian(g, tdse::SoftCoreModel{}, {8.0, 0.3});
  const auto pairs = eigenpairs_near(H, cd(-1.0, -0.05), 4);
  const std::vector<cd> c{0.3, cd(0.0, 0.2), cd(-0.1, 0.05), 0.0};
  InteriorState psi;
  const auto f0 = interior_function(H, pairs[0]);
  psi.psi = Eigen::MatrixXcd::Zero(f0.rows(), f0.cols());
  for (int m = 0; m < 4; ++m) psi.psi += c[m] * interior_function(H, pairs[m]);
  for (int i = H.axis.kink_left; i <= H.axis.kink_right; ++i) psi.x.push_back(H.axis.x[i]);
  psi.h = H.axis.h;
  REQUIRE(static_cast<int>(psi.x.size()) == f0.rows());

  const auto q = quasi_bound_projection(psi, H, pairs);
  REQUIRE(q.coefficients.size() == 4);
  for (int m = 0; m < 4; ++m) CHECK(std::abs(q.coefficients[m] - c[m]) < 1e-10);
  CHECK((q.psi_beta().psi - psi.psi).norm() < 1e-10 * psi.psi.norm());
  double pop = 0.0;
  for (cd z : c) pop += std::norm(z);
  CHECK(q.population() == doctest::Approx(pop));

  const double t = 7.5;
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(f0.rows(), f0.cols());
  for (int m = 0; m < 4; ++m) expect += c[m] * std::exp(cd(0, -1) * pairs[m].E * t) * q.functions[m];
  CHECK((q.evolve(t).psi - expect).norm() < 1e-12 * expect.norm());
}
