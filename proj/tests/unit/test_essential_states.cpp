#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "attobeat/errors.hpp"
#include "attobeat/essential_states.hpp"
#include "attobeat/resonance_set.hpp"
#include "attobeat/units.hpp"

using namespace attobeat;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

PathAmplitudes random_amps(int n, int m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  PathAmplitudes a;
  a.e1 = a.e2 = EnergyAxis{0.0, 2.0, n};
  a.gamma = Eigen::MatrixXcd::NullaryExpr(n, n, [&] { return cd(g(rng), g(rng)); });
  for (int k = 0; k < m; ++k)
    a.beta.push_back(Eigen::MatrixXcd::NullaryExpr(n, n, [&] { return 0.1 * cd(g(rng), g(rng)); }));
  return a;
}

ResonanceSet one_resonance(double dE, double gamma) {
  return ResonanceSet(-2.9, {{"r", cd(-2.9 + dE, -0.5 * gamma)}});
}

// brute-force bin sum of gamma^* beta_hat over window rows
cd overlap(const PathAmplitudes& a, const ResonanceSet& r, const EnergyWindow& w, double tau) {
  const auto bh = beta_hat(a, r, tau);
  cd s = 0.0;
  for (int i = 0; i < a.e1.bins; ++i) {
    const double e = a.e1.center(i);
    if (e < w.lo || e >= w.hi) continue;
    for (int j = 0; j < a.e2.bins; ++j) s += std::conj(a.gamma(i, j)) * bh(i, j);
  }
  return s * a.bin_area();
}

}  // namespace

TEST_CASE("resonance set invariants") {
  CHECK_NOTHROW(ResonanceSet(-3.0, {{"a", cd(-1.0, -0.001)}, {"b", cd(-0.9, 0.0)}}));
  CHECK_THROWS_AS(ResonanceSet(-3.0, {{"a", cd(-1.0, 0.001)}}), DomainError);
  CHECK_THROWS_AS(ResonanceSet(-3.0, {{"a", cd(-3.5, -0.001)}}), DomainError);
  CHECK_THROWS_AS(ResonanceSet(-3.0, {{"a", cd(-1.0, -0.001)}, {"a", cd(-0.9, -0.001)}}), StructuralError);
  const ResonanceSet s(-3.0, {{"a", cd(-1.0, -0.002)}});
  CHECK(s.states()[0].width() == doctest::Approx(0.004));
  CHECK(s.excitation(0) == cd(2.0, -0.002));
}

TEST_CASE("resonance table round trip and reserved rows") {
  std::istringstream in("# comment\nground -2.9 0\nion -2.0 0\n\nr1 -0.7 1e-3  # trailing\nr2 -0.6 2e-4\n");
  const auto t = read_resonance_table(in);
  CHECK(t.set.ground_energy() == -2.9);
  REQUIRE(t.ion_energy.has_value());
  CHECK(t.first_threshold() == doctest::Approx(0.9));
  CHECK(t.second_threshold() == doctest::Approx(2.0));
  REQUIRE(t.set.size() == 2);
  CHECK(t.set.states()[1].energy == cd(-0.6, -1e-4));
  std::ostringstream out;
  write_resonance_table(out, t);
  std::istringstream back(out.str());
  const auto u = read_resonance_table(back);
  CHECK(u.set.states()[0].energy == t.set.states()[0].energy);
  CHECK(*u.ion_energy == *t.ion_energy);

  std::istringstream bad("ground -2.9 0\nr1 -0.7 nope\n");
  try {
    read_resonance_table(bad, "bad.txt");
    FAIL("expected an error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("bad.txt:2") != std::string::npos);
  }
  std::istringstream noground("r1 -0.7 1e-3\n");
  CHECK_THROWS(read_resonance_table(noground));
}

TEST_CASE("beta_hat phases") {
  auto a = random_amps(8, 2, 1);
  const ResonanceSet r(-2.9, {{"a", cd(-0.7, -0.001)}, {"b", cd(-0.6, 0.0)}});
  CHECK((beta_hat(a, r, 0.0) - (a.beta[0] + a.beta[1])).norm() < 1e-14);

  auto s = random_amps(6, 1, 2);
  const auto r1 = one_resonance(2.2109, 0.0);
  const double period = 2.0 * pi / 2.2109;
  CHECK(units::au_to_as(period) == doctest::Approx(68.75).epsilon(2e-4));
  const auto b0 = beta_hat(s, r1, 10.0), b1 = beta_hat(s, r1, 10.0 + period), bq = beta_hat(s, r1, 10.0 + 0.25 * period);
  CHECK((b0 - b1).norm() < 1e-12 * b0.norm());
  CHECK(b0.cwiseAbs().isApprox(bq.cwiseAbs(), 1e-12));
  CHECK(std::arg(bq(1, 2) / b0(1, 2)) == doctest::Approx(-pi / 2));

  const auto rg = one_resonance(2.0, 0.01);
  CHECK(beta_hat(s, rg, 50.0).cwiseAbs().isApprox(s.beta[0].cwiseAbs() * std::exp(-0.25), 1e-12));

  auto wrong = random_amps(6, 2, 3);
  CHECK_THROWS_AS(beta_hat(wrong, r1, 0.0), StructuralError);
}

TEST_CASE("probability map") {
  auto a = random_amps(5, 1, 4);
  const auto r = one_resonance(2.0, 0.02);
  auto z = a;
  z.beta[0].setZero();
  CHECK(probability_map(z, r, 3.0).isApprox(a.gamma.cwiseAbs2(), 1e-14));
  auto g0 = a;
  g0.gamma.setZero();
  CHECK(probability_map(g0, r, 7.0).isApprox(a.beta[0].cwiseAbs2() * std::exp(-0.14), 1e-12));

  // |gamma| = 1, |beta_hat| = 0.1 swept over a full phase turn
  PathAmplitudes u;
  u.e1 = u.e2 = EnergyAxis{0.0, 1.0, 1};
  u.gamma = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  u.beta = {Eigen::MatrixXcd::Constant(1, 1, 0.1)};
  const auto ru = one_resonance(1.0, 0.0);
  double lo = 1e9, hi = -1e9;
  for (int k = 0; k < 2000; ++k) {
    const double p = probability_map(u, ru, 2.0 * pi * k / 2000.0)(0, 0);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  CHECK(lo == doctest::Approx(0.81).epsilon(1e-6));
  CHECK(hi == doctest::Approx(1.21).epsilon(1e-6));
}

TEST_CASE("modulation amplitude against brute-force bin sums") {
  auto a = random_amps(16, 1, 5);
  const auto r = one_resonance(2.1, 0.004);
  const EnergyWindow w{0.4, 1.3};
  const cd g = overlap(a, r, w, 0.0);
  for (double tau : {0.0, 10.0, 123.4}) {
    CHECK(modulation_amplitude(a, r, w, tau) == doctest::Approx(4.0 * std::abs(g) * std::exp(-0.002 * tau)));
  }
  auto z = a;
  z.beta[0].setZero();
  CHECK(modulation_amplitude(z, r, w, 5.0) == 0.0);
  CHECK_THROWS_AS(modulation_amplitude(a, r, EnergyWindow{1.99, 1.995}, 0.0), DomainError);

  // two resonances, equal overlaps, no decay: 8|g||cos(delta tau / 2)|
  PathAmplitudes b = a;
  b.beta = {a.beta[0], a.beta[0]};
  const double delta = 0.1;
  const ResonanceSet r2(-2.9, {{"a", cd(-2.9 + 2.1, 0.0)}, {"b", cd(-2.9 + 2.1 - delta, 0.0)}});
  for (double tau : {0.0, 7.0, 15.0, 31.4159}) {
    CHECK(modulation_amplitude(b, r2, w, tau) ==
          doctest::Approx(8.0 * std::abs(g) * std::abs(std::cos(0.5 * delta * tau))).epsilon(1e-10));
  }
}

TEST_CASE("pump-probe and background yields") {
  auto a = random_amps(12, 1, 6);
  const auto r = one_resonance(2.0, 0.01);
  const EnergyWindow w{0.3, 1.5};
  const double p0 = pump_probe_yield(a, r, w, 0.0);
  CHECK(pump_probe_yield(a, r, w, 40.0) == doctest::Approx(p0 * std::exp(-0.4)));
  auto z = a;
  z.beta[0].setZero();
  CHECK(pump_probe_yield(z, r, w, 1.0) == 0.0);

  const double bg = background_yield(a, w);
  auto d = a;
  d.gamma *= 2.0;
  CHECK(background_yield(d, w) == doctest::Approx(4.0 * bg));
  d.gamma.setZero();
  CHECK(background_yield(d, w) == 0.0);

  PathAmplitudes u;
  u.e1 = u.e2 = EnergyAxis{0.0, 1.0, 10};
  u.gamma = Eigen::MatrixXcd::Constant(10, 10, std::sqrt(3.0));
  const EnergyWindow half{0.0, 0.5};  // 5 rows x 10 columns = 50 bins
  CHECK(background_yield(u, half) == doctest::Approx(2.0 * 50 * 3.0 * 0.01));
}

TEST_CASE("two resonances: P_beta beats with the splitting") {
  auto a = random_amps(10, 2, 7);
  const double delta = 0.2;
  const ResonanceSet r(-2.9, {{"a", cd(-0.8, 0.0)}, {"b", cd(-0.8 - delta, 0.0)}});
  const EnergyWindow w{0.2, 1.8};
  const double T = 2.0 * pi / delta;
  for (double tau : {0.0, 3.0, 11.0}) {
    CHECK(pump_probe_yield(a, r, w, tau + T) == doctest::Approx(pump_probe_yield(a, r, w, tau)).epsilon(1e-10));
    CHECK(modulation_amplitude(a, r, w, tau + T) == doctest::Approx(modulation_amplitude(a, r, w, tau)).epsilon(1e-10));
  }
  CHECK(pump_probe_yield(a, r, w, 0.25 * T) != doctest::Approx(pump_probe_yield(a, r, w, 0.0)));
}

TEST_CASE("Cauchy-Schwarz, linearity and phase invariance") {
  auto a = random_amps(10, 3, 8);
  const ResonanceSet r(-2.9, {{"a", cd(-0.8, -0.001)}, {"b", cd(-0.75, -0.002)}, {"c", cd(-0.7, 0.0)}});
  const EnergyWindow w{0.1, 1.9};
  for (double tau = 0.0; tau < 200.0; tau += 7.3) {
    const double am = modulation_amplitude(a, r, w, tau);
    CHECK(am <= 4.0 * std::sqrt(0.5 * background_yield(a, w) * pump_probe_yield(a, r, w, tau)) * (1 + 1e-12));
  }
  const cd c(0.3, -1.2);
  auto s = a;
  s.gamma *= c;
  CHECK(modulation_amplitude(s, r, w, 9.0) == doctest::Approx(std::abs(c) * modulation_amplitude(a, r, w, 9.0)));
  CHECK(background_yield(s, w) == doctest::Approx(std::norm(c) * background_yield(a, w)));
  CHECK(pump_probe_yield(s, r, w, 9.0) == doctest::Approx(pump_probe_yield(a, r, w, 9.0)));

  const cd ph = std::polar(1.0, 0.77);
  auto p = a;
  p.gamma *= ph;
  for (auto& b : p.beta) b *= ph;
  CHECK(modulation_amplitude(p, r, w, 4.0) == doctest::Approx(modulation_amplitude(a, r, w, 4.0)));
  CHECK(pump_probe_yield(p, r, w, 4.0) == doctest::Approx(pump_probe_yield(a, r, w, 4.0)));
  CHECK(probability_map(p, r, 4.0).isApprox(probability_map(a, r, 4.0), 1e-12));
}

TEST_CASE("window overlaps reproduce the bin sums") {
  auto a = random_amps(14, 3, 9);
  const ResonanceSet r(-2.9, {{"a", cd(-0.8, -0.001)}, {"b", cd(-0.75, -0.002)}, {"c", cd(-0.7, 0.0)}});
  const EnergyWindow w{0.5, 1.6};
  const auto ov = window_overlaps(a, r, w);
  for (double tau : {0.0, 12.0, 77.7}) {
    CHECK(ov.modulation_amplitude(tau) == doctest::Approx(modulation_amplitude(a, r, w, tau)).epsilon(1e-12));
    CHECK(ov.pump_probe_yield(tau) == doctest::Approx(pump_probe_yield(a, r, w, tau)).epsilon(1e-12));
    // windowed yield = |alpha|^2 + |gamma + beta_hat|^2 summed over window rows
    const auto P = probability_map(a, r, tau);
    double brute = 0.0;
    for (int i = 0; i < a.e1.bins; ++i) {
      const double e = a.e1.center(i);
      if (e >= w.lo && e < w.hi) brute += (P.row(i).sum() + a.gamma.row(i).cwiseAbs2().sum());
    }
    CHECK(ov.windowed_yield(tau) == doctest::Approx(brute * a.bin_area()).epsilon(1e-12));
  }
  CHECK(ov.background_yield() == doctest::Approx(background_yield(a, w)));
}

TEST_CASE("A_M equals the peak-to-peak local oscillation of the windowed yield") {
  auto a = random_amps(12, 1, 10);
  const auto r = one_resonance(2.2, 0.0);
  const EnergyWindow w{0.2, 1.7};
  const double period = 2.0 * pi / 2.2;
  for (double tau0 : {40.0, 90.0}) {
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k <= 4000; ++k) {
      const double tau = tau0 + period * k / 4000.0;
      const auto P = probability_map(a, r, tau);
      double s = 0.0;
      for (int i = 0; i < a.e1.bins; ++i)
        if (a.e1.center(i) >= w.lo && a.e1.center(i) < w.hi) s += P.row(i).sum();
      s *= a.bin_area();
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    CHECK(hi - lo == doctest::Approx(modulation_amplitude(a, r, w, tau0)).epsilon(1e-6));
  }
}

TEST_CASE("decay laws are exactly exponential") {
  auto a = random_amps(10, 1, 11);
  const double G = 1e-3;
  const auto r = one_resonance(2.0, G);
  const EnergyWindow w{0.1, 1.9};
  const auto ov = window_overlaps(a, r, w);
  const double A0 = ov.modulation_amplitude(0.0), P0 = ov.pump_probe_yield(0.0);
  for (double tau = 0.0; tau < 3000.0; tau += 250.0) {
    CHECK(std::abs(std::log(ov.modulation_amplitude(tau) / A0) + 0.5 * G * tau) < 1e-8);
    CHECK(std::abs(std::log(ov.pump_probe_yield(tau) / P0) + G * tau) < 1e-8);
  }
}

TEST_CASE("default window") {
  const auto w = default_window(units::eV_to_au(61.99), units::eV_to_au(24.59), units::eV_to_au(54.42));
  CHECK(units::au_to_eV(w.lo) == doctest::Approx(7.57).epsilon(1e-3));
  CHECK(units::au_to_eV(w.hi) == doctest::Approx(37.40).epsilon(1e-3));
  const auto v = default_window(units::eV_to_au(65.25), units::eV_to_au(24.59), units::eV_to_au(54.42));
  CHECK(units::au_to_eV(v.lo) == doctest::Approx(10.83).epsilon(1e-3));
  CHECK(units::au_to_eV(v.hi) == doctest::Approx(40.66).epsilon(1e-3));
  CHECK_THROWS_AS(default_window(2.0, 0.9, 2.0), DomainError);
  CHECK_THROWS_AS(default_window(3.0, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(EnergyWindow({1.0, 0.5}).validate(), DomainError);
  CHECK_THROWS_AS(EnergyWindow({-0.1, 0.5}).validate(), DomainError);
}

TEST_CASE("scan records") {
  auto a = random_amps(8, 1, 12);
  const auto r = one_resonance(2.0, 0.001);
  const auto ov = window_overlaps(a, r, EnergyWindow{0.1, 1.9});
  const auto scan = scan_model(ov, {0.0, 1.0, 2.0});
  REQUIRE(scan.records.size() == 3);
  CHECK(scan.taus() == std::vector<double>{0.0, 1.0, 2.0});
  for (const auto& rec : scan.records) {
    CHECK(rec.A_M >= 0.0);
    CHECK(rec.P_beta >= 0.0);
    CHECK(rec.P_bg >= 0.0);
    CHECK(rec.yield == doctest::Approx(rec.P_bg + rec.P_beta + 2.0 * std::real(ov.interference(rec.tau))));
  }
  CHECK(scan.column(&ScanRecord::A_M)[1] == doctest::Approx(ov.modulation_amplitude(1.0)));
}

TEST_CASE("synthesized amplitudes") {
  const Pulse pump(41.34, 2.2, 1e12);
  Couplings c;
  c.I1 = 1.2;
  c.I2 = 2.0;
  c.excitation = {1.0, 1.0};
  const ResonanceSet r(-3.2, {{"near", cd(-1.0, -0.001)}, {"far", cd(-3.2 + 2.2 + 1.5, -0.001)}});
  const auto s = synthesize_amplitudes(r, pump, pump, c, EnergyAxis{0.0, 3.0, 96});
  CHECK(s.amps.gamma.isApprox(s.amps.gamma.transpose(), 1e-14));
  CHECK(s.amps.beta[0].isApprox(s.amps.beta[0].transpose(), 1e-14));
  CHECK(s.amps.beta[1].cwiseAbs().maxCoeff() < 1e-3 * s.amps.beta[0].cwiseAbs().maxCoeff());

  // resonance whose final energy falls outside the grid
  const ResonanceSet out(-3.2, {{"low", cd(-3.0, -0.001)}});
  Couplings c1 = c;
  c1.excitation = {1.0};
  const auto so = synthesize_amplitudes(out, pump, pump, c1, EnergyAxis{0.0, 3.0, 32});
  CHECK(so.warnings.size() == 1);
  CHECK(so.amps.beta[0].norm() == 0.0);
  CHECK_THROWS_AS(synthesize_amplitudes(r, pump, pump, c1), StructuralError);
}

TEST_CASE("helium 2snp+ n=3..8 all reached by a 2 fs, 19 nm pulse") {
  const double E0 = -2.903724;
  const double above_eV[] = {63.66, 64.47, 64.82, 65.00, 65.11, 65.18};
  std::vector<Resonance> st;
  for (int k = 0; k < 6; ++k)
    st.push_back({"n" + std::to_string(k + 3), cd(E0 + units::eV_to_au(above_eV[k]), -1e-5)});
  const ResonanceSet r(E0, st);
  const Pulse pump(units::fs_to_au(2.0), units::eV_to_au(units::photon_energy_from_wavelength(19.0)), 1e12);
  Couplings c;
  c.excitation.assign(6, 1.0);
  c.I1 = -2.0 - E0;
  c.I2 = 2.0;
  const auto s = synthesize_amplitudes(r, pump, pump, c, EnergyAxis{0.0, units::eV_to_au(60.0), 128});
  for (const auto& b : s.amps.beta) CHECK(b.cwiseAbs().maxCoeff() > 1e-3);
  CHECK(s.warnings.empty());
}

TEST_CASE("spectral half width") {
  const Pulse p(41.34, 2.2, 1e12);
  const double hw = spectral_hwhm(p);
  CHECK(std::abs(envelope_spectrum(p, 2.2 + hw)) ==
        doctest::Approx(0.5 * std::abs(envelope_spectrum(p, 2.2))).epsilon(1e-8));
}
