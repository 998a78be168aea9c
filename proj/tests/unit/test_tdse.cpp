#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <cstring>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "attobeat/errors.hpp"
#include "attobeat/tdse/checkpoint.hpp"
#include "attobeat/tdse/delay_scan.hpp"
#include "attobeat/tdse/ground_state.hpp"
#include "attobeat/tdse/ion.hpp"
#include "attobeat/tdse/propagator.hpp"
#include "attobeat/tdse/spectrum.hpp"

using namespace attobeat;
using namespace attobeat::tdse;
using std::numbers::pi;

namespace {

// Kinetic matrix built from an explicit DFT, independent of FFTW and of the
// library's dense helper.
Eigen::MatrixXd dft_kinetic(const Grid2e& g) {
  const int n = g.n;
  Eigen::MatrixXcd F(n, n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j) F(a, j) = std::polar(1.0, -2.0 * pi * a * j / n);
  Eigen::VectorXd k2(n);
  const double dk = 2.0 * pi / (n * g.h());
  for (int a = 0; a < n; ++a) {
    const int m = a < (n + 1) / 2 ? a : a - n;
    k2(a) = 0.5 * (m * dk) * (m * dk);
  }
  const Eigen::MatrixXcd T = F.adjoint() * k2.asDiagonal() * F / double(n);
  return T.real();
}

// Lowest eigenvalue of H restricted to exchange-symmetric functions.
double dense_symmetric_ground(const Grid2e& g, const SoftCoreModel& m) {
  const int n = g.n;
  const Eigen::MatrixXd T = dft_kinetic(g);
  std::vector<std::pair<int, int>> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) basis.push_back({i, j});
  auto full = [&](int i, int j, int k, int l) {
    double v = 0.0;
    if (j == l) v += T(i, k);
    if (i == k) v += T(j, l);
    if (i == k && j == l) v += m.potential(g.x(i), g.x(j));
    return v;
  };
  const int d = static_cast<int>(basis.size());
  Eigen::MatrixXd H(d, d);
  for (int a = 0; a < d; ++a) {
    const auto [i, j] = basis[a];
    const double na = i == j ? 0.5 : 1.0 / std::sqrt(2.0);
    for (int b = 0; b < d; ++b) {
      const auto [k, l] = basis[b];
      const double nb = k == l ? 0.5 : 1.0 / std::sqrt(2.0);
      H(a, b) = na * nb * (full(i, j, k, l) + full(i, j, l, k) + full(j, i, k, l) + full(j, i, l, k));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Wavefunction2e gaussian_pair(const Grid2e& g, double c1, double c2, double sigma, double k0 = 0.0) {
  Wavefunction2e psi(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      auto f = [&](double x, double c) {
        return std::exp(-(x - c) * (x - c) / (4 * sigma * sigma)) * std::polar(1.0, k0 * x);
      };
      psi(i, j) = f(g.x(i), c1) * f(g.x(j), c2) + f(g.x(i), c2) * f(g.x(j), c1);
    }
  psi.normalize();
  return psi;
}

double x1_second_moment(const Wavefunction2e& psi) {
  const Grid2e& g = psi.grid();
  double s = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) s += g.x(i) * g.x(i) * std::norm(psi(i, j));
  return s * g.h() * g.h();
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid2e g{64, 10.0};
  CHECK(g.h() == doctest::Approx(20.0 / 63));
  CHECK(g.x(0) == -10.0);
  CHECK(g.x(63) == doctest::Approx(10.0));
  CHECK(g.k(1) == doctest::Approx(2 * pi / (64 * g.h())));
  CHECK(g.k(63) == doctest::Approx(-g.k(1)));
  CHECK_THROWS_AS(Grid2e({32, 10.0}).validate(), DomainError);
  CHECK_THROWS_AS(SoftCoreModel({2.0, 0.0, 1.0, true}).validate(), DomainError);
}

TEST_CASE("spectral kinetic matrix matches an explicit DFT") {
  const Grid2e g{64, 12.0};
  CHECK((spectral_kinetic_matrix(g) - dft_kinetic(g)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ground state against dense symmetric-sector diagonalization") {
  const Grid2e g{64, 12.0};
  const SoftCoreModel m{};
  const double oracle = dense_symmetric_ground(g, m);
  const auto gs = ground_state(g, m);
  CHECK(gs.energy == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(gs.residual < 1e-6);
  CHECK(gs.psi.norm() == doctest::Approx(1.0));
  CHECK(gs.psi.exchange_asymmetry() < 1e-10);
}

TEST_CASE("noninteracting ground state is twice the ion ground energy") {
  const Grid2e g{96, 15.0};
  SoftCoreModel m{};
  m.interacting = false;
  const auto ion = ion_spectrum(g, m);
  const auto gs = ground_state(g, m);
  CHECK(gs.energy == doctest::Approx(2.0 * ion.ground_energy()).epsilon(1e-8));
  const auto th = single_ion_threshold(gs.energy, ion.ground_energy());
  CHECK(th.I1 == doctest::Approx(th.I2).epsilon(1e-8));
  CHECK(ion.bound_count() >= 1);
  CHECK(ion.states.col(0).squaredNorm() * ion.h == doctest::Approx(1.0));
}

TEST_CASE("hamiltonian is hermitian and exchange symmetric") {
  const Grid2e g{64, 12.0};
  const SplitOperator prop(g, SoftCoreModel{}, {});
  auto a = gaussian_pair(g, -1.0, 2.0, 1.0, 0.3);
  auto b = gaussian_pair(g, 0.5, -2.5, 0.7, -0.8);
  Wavefunction2e Ha(g), Hb(g);
  prop.apply_hamiltonian(a, Ha, 0.01);
  prop.apply_hamiltonian(b, Hb, 0.01);
  CHECK(std::abs(b.inner(Ha) - std::conj(a.inner(Hb))) < 1e-12);
  CHECK(Ha.exchange_asymmetry() < 1e-12);
  CHECK(prop.energy(a) == doctest::Approx(a.inner(Ha).real() - 0.0).epsilon(0.05));
}

TEST_CASE("free gaussian spreads as in closed form") {
  const Grid2e g{128, 40.0};
  SoftCoreModel m{};
  m.Z = 0.0;
  m.interacting = false;
  const SplitOperator prop(g, m, {0.05});
  Wavefunction2e psi(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) psi(i, j) = std::exp(-(g.x(i) * g.x(i) + g.x(j) * g.x(j)) / 4.0);
  psi.normalize();
  CHECK(x1_second_moment(psi) == doctest::Approx(1.0).epsilon(1e-8));
  prop.propagate(psi, {}, 0.0, 5.0);
  CHECK(x1_second_moment(psi) == doctest::Approx(1.0 + 25.0 / 4.0).epsilon(1e-8));
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("norm, symmetry and second-order time convergence under a strong pulse") {
  const Grid2e g{64, 15.0};
  const SoftCoreModel m{};
  const auto gs = ground_state(g, m);
  const std::vector<Pulse> pulses{Pulse(20.0, 1.0, 1e15)};
  auto run = [&](double dt) {
    const SplitOperator prop(g, m, {dt});
    auto psi = gs.psi;
    prop.propagate(psi, pulses, 0.0, 20.0);
    return psi;
  };
  const auto ref = run(0.1 / 16);
  const auto a = run(0.1), b = run(0.05), c = run(0.025);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.exchange_asymmetry() < 1e-12);
  auto dist = [&](const Wavefunction2e& x) { return (x.matrix() - ref.matrix()).norm() * g.h(); };
  const double r1 = dist(a) / dist(b), r2 = dist(b) / dist(c);
  CHECK(r1 > 3.5);
  CHECK(r1 < 4.6);
  CHECK(r2 > 3.5);
  CHECK(r2 < 4.6);
}

TEST_CASE("filtered ground state is stationary under the propagator") {
  const Grid2e g{64, 15.0};
  const SoftCoreModel m{};
  const auto gs = ground_state(g, m);
  const SplitOperator prop(g, m, {0.05});
  const auto f = stationary_filter(prop, gs.psi, gs.energy);
  const double E = propagator_phase_energy(prop, f);
  CHECK(E == doctest::Approx(gs.energy).epsilon(1e-3));
  auto psi = f;
  const long steps = prop.propagate(psi, {}, 0.0, 10.0);
  CHECK(steps == 200);
  const auto ov = f.inner(psi);
  CHECK(std::abs(ov) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(std::remainder(std::arg(ov) + E * 10.0, 2 * pi)) < 1e-6);
}

TEST_CASE("absorber removes outgoing flux") {
  const Grid2e g{64, 20.0};
  SoftCoreModel m{};
  m.Z = 0.0;
  m.interacting = false;
  PropagatorOptions o{0.05, true, {6.0, 0.125}};
  const SplitOperator prop(g, m, o);
  auto psi = gaussian_pair(g, 0.0, 0.0, 1.0, 3.0);
  prop.propagate(psi, {}, 0.0, 15.0);
  CHECK(psi.norm() < 0.05);
}

TEST_CASE("DI spectrum") {
  const Grid2e g{256, 100.0};
  const DIRegionSpec region{10.0, 4.0};
  SUBCASE("state inside the region: momentum total equals the norm") {
    const auto psi = gaussian_pair(g, 50.0, -50.0, 6.0, 0.5);
    const auto s = di_spectrum(psi, region);
    CHECK(s.total() == doctest::Approx(1.0).epsilon(1e-6));
    const EnergyWindow all{0.0, 1e9};
    CHECK(windowed_yield(s, all) == doctest::Approx(s.total()).epsilon(1e-12));
    const EnergyWindow lo{0.0, 0.1}, hi{0.1, 1e9};
    CHECK(windowed_yield(s, lo) + windowed_yield(s, hi) == doctest::Approx(s.total()).epsilon(1e-12));
    // momentum concentrated at +-0.5 on both axes, energy 0.125
    const EnergyWindow peak{0.05, 0.25};
    CHECK(windowed_yield(s, peak) > 0.9);
    const EnergyAxis ax{0.0, 2.0, 40};
    CHECK(energy_map(s, ax).sum() == doctest::Approx(s.total()).epsilon(1e-6));
  }
  SUBCASE("bound ground state has negligible DI") {
    const auto gs = ground_state(Grid2e{96, 20.0}, SoftCoreModel{});
    CHECK(di_spectrum(gs.psi, region).total() < 1e-6);
  }
  SUBCASE("errors") {
    const auto psi = gaussian_pair(g, 0.0, 0.0, 1.0);
    CHECK_THROWS_AS(di_spectrum(psi, {98.0, 4.0}), DomainError);
    CHECK_THROWS_AS(windowed_yield(di_spectrum(psi, region), {1e8, 2e8}), DomainError);
  }
}

TEST_CASE("bound orbital removal") {
  const Grid2e g{64, 15.0};
  const SoftCoreModel m{};
  const auto ion = ion_spectrum(g, m);
  Wavefunction2e psi(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) psi(i, j) = ion.states(i, 0) * std::exp(-0.01 * g.x(j) * g.x(j)) * std::cos(2.0 * g.x(j));
  remove_bound_orbitals(psi, ion);
  CHECK(psi.norm() < 1e-20);
  auto q = gaussian_pair(g, 8.0, -8.0, 1.0, 1.5);
  remove_bound_orbitals(q, ion);
  auto r = q;
  remove_bound_orbitals(r, ion);
  CHECK((r.matrix() - q.matrix()).norm() < 1e-12 * q.matrix().norm());
}

TEST_CASE("checkpoint round trip") {
  const Grid2e g{64, 11.0};
  const auto psi = gaussian_pair(g, -1.0, 1.5, 0.8, 0.7);
  const auto dir = std::filesystem::temp_directory_path() / "attobeat_ckpt_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "a.bin").string();
  write_checkpoint(path, psi, 12.5);
  const auto c = read_checkpoint(path);
  CHECK(c.time == 12.5);
  CHECK(c.psi.grid().n == 64);
  CHECK(c.psi.grid().L == 11.0);
  CHECK(c.norm == doctest::Approx(1.0));
  CHECK(std::memcmp(c.psi.data(), psi.data(), psi.size() * sizeof(cd)) == 0);
  std::filesystem::resize_file(path, 100);
  CHECK_THROWS_AS(read_checkpoint(path), IoError);
  CHECK_THROWS_AS(read_checkpoint((dir / "missing.bin").string()), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scanner refuses time steps that alias the grid spectrum") {
  const Grid2e g{256, 50.0};
  const double span = max_spectral_span(g, SoftCoreModel{});
  CHECK(2 * pi / span == doctest::Approx(0.0902).epsilon(0.02));
  TdseScanConfig cfg;
  cfg.dt = 0.12;
  CHECK_THROWS_AS(TdseScanner{cfg}, DomainError);
}

TEST_CASE("small scan: background path carries no delay dependence") {
  TdseScanConfig cfg;
  cfg.grid = {96, 30.0};
  cfg.dt = 0.05;
  cfg.absorber = {8.0, 0.125};
  cfg.region = {8.0, 3.0};
  cfg.post_time = 10.0;
  cfg.pump = Pulse(20.0, 2.2, 1e14);
  cfg.probe = cfg.pump;
  cfg.path = ScanPath::Background;
  cfg.window = {0.05, 2.0};
  const TdseScanner sc(cfg);
  CHECK(sc.initial_state().exchange_asymmetry() < 1e-12);
  std::vector<TdsePoint> pts;
  sc.run({20.0, 21.0, 22.5}, [&](const TdsePoint& p) { pts.push_back(p); });
  REQUIRE(pts.size() == 3);
  for (const auto& p : pts) {
    CHECK(p.ok);
    CHECK(p.total_di >= p.yield * 0.0);
    CHECK(p.yield == doctest::Approx(pts[0].yield).epsilon(1e-2));
  }
  CHECK_THROWS_AS(sc.run({5.0}, [](const TdsePoint&) {}), DomainError);
}
