#include "attobeat/essential_states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "attobeat/errors.hpp"

namespace attobeat {

namespace {

using cd = std::complex<double>;

std::vector<int> window_bins(const EnergyAxis& axis, const EnergyWindow& w) {
  w.validate();
  std::vector<int> bins;
  for (int i = 0; i < axis.bins; ++i) {
    const double e = axis.center(i);
    if (e >= w.lo && e < w.hi) bins.push_back(i);
  }
  if (bins.empty()) throw DomainError("energy window contains no bins");
  return bins;
}

void check_match(const PathAmplitudes& amps, const ResonanceSet& res) {
  amps.validate();
  if (amps.beta.size() != res.size()) {
    throw StructuralError("PathAmplitudes carries " + std::to_string(amps.beta.size()) +
                          " beta maps but the resonance set has " + std::to_string(res.size()));
  }
}

std::vector<cd> phases(const std::vector<cd>& excitation, double tau) {
  std::vector<cd> p(excitation.size());
  for (std::size_t m = 0; m < p.size(); ++m) p[m] = std::exp(cd(0.0, -1.0) * excitation[m] * tau);
  return p;
}

double gaussian(double x, double sigma) { return std::exp(-0.5 * x * x / (sigma * sigma)); }

}  // namespace

void EnergyAxis::validate() const {
  if (bins < 1) throw StructuralError("energy axis needs at least one bin");
  if (!(hi > lo)) throw DomainError("energy axis must be strictly increasing");
}

void EnergyWindow::validate() const {
  if (!(lo < hi)) throw DomainError("energy window requires lo < hi");
  if (lo < 0.0) throw DomainError("energy window must lie at non-negative energies");
}

EnergyWindow default_window(double omega, double I1, double I2) {
  if (!(I2 > I1)) throw DomainError("default window requires I2 > I1");
  if (!(omega > I2)) throw DomainError("photon energy must exceed the second ionization threshold");
  return {omega - I2, omega - I1};
}

void PathAmplitudes::validate() const {
  e1.validate();
  e2.validate();
  if (gamma.rows() != e1.bins || gamma.cols() != e2.bins)
    throw StructuralError("gamma does not match the energy grid");
  if (!gamma.allFinite()) throw DomainError("gamma has non-finite entries");
  for (const auto& b : beta) {
    if (b.rows() != e1.bins || b.cols() != e2.bins)
      throw StructuralError("beta map does not match the energy grid");
    if (!b.allFinite()) throw DomainError("beta has non-finite entries");
  }
}

Eigen::MatrixXcd beta_hat(const PathAmplitudes& amps, const ResonanceSet& res, double tau) {
  check_match(amps, res);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(amps.e1.bins, amps.e2.bins);
  for (std::size_t m = 0; m < res.size(); ++m) {
    out += std::exp(cd(0.0, -1.0) * res.excitation(m) * tau) * amps.beta[m];
  }
  return out;
}

Eigen::MatrixXd probability_map(const PathAmplitudes& amps, const ResonanceSet& res, double tau) {
  return (amps.gamma + beta_hat(amps, res, tau)).cwiseAbs2();
}

double modulation_amplitude(const PathAmplitudes& amps, const ResonanceSet& res,
                            const EnergyWindow& window, double tau) {
  const auto rows = window_bins(amps.e1, window);
  const Eigen::MatrixXcd b = beta_hat(amps, res, tau);
  cd acc = 0.0;
  for (int i : rows) acc += amps.gamma.row(i).dot(b.row(i));
  return 4.0 * std::abs(acc) * amps.bin_area();
}

double pump_probe_yield(const PathAmplitudes& amps, const ResonanceSet& res,
                        const EnergyWindow& window, double tau) {
  const auto rows = window_bins(amps.e1, window);
  const Eigen::MatrixXcd b = beta_hat(amps, res, tau);
  double acc = 0.0;
  for (int i : rows) acc += b.row(i).squaredNorm();
  return acc * amps.bin_area();
}

double background_yield(const PathAmplitudes& amps, const EnergyWindow& window) {
  amps.validate();
  const auto rows = window_bins(amps.e1, window);
  double acc = 0.0;
  for (int i : rows) acc += amps.gamma.row(i).squaredNorm();
  return 2.0 * acc * amps.bin_area();
}

WindowOverlaps window_overlaps(const PathAmplitudes& amps, const ResonanceSet& res,
                               const EnergyWindow& window) {
  check_match(amps, res);
  const auto rows = window_bins(amps.e1, window);
  const std::size_t M = res.size();
  const double area = amps.bin_area();
  WindowOverlaps ov;
  ov.g.assign(M, 0.0);
  ov.G = Eigen::MatrixXcd::Zero(M, M);
  for (std::size_t m = 0; m < M; ++m) ov.excitation.push_back(res.excitation(m));
  for (int i : rows) {
    ov.gamma_norm += amps.gamma.row(i).squaredNorm() * area;
    for (std::size_t m = 0; m < M; ++m) {
      // Eigen's dot conjugates its left argument
      ov.g[m] += amps.gamma.row(i).dot(amps.beta[m].row(i)) * area;
      for (std::size_t n = 0; n < M; ++n) {
        ov.G(m, n) += amps.beta[m].row(i).dot(amps.beta[n].row(i)) * area;
      }
    }
  }
  return ov;
}

cd WindowOverlaps::interference(double tau) const {
  const auto p = phases(excitation, tau);
  cd acc = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) acc += g[m] * p[m];
  return acc;
}

double WindowOverlaps::modulation_amplitude(double tau) const { return 4.0 * std::abs(interference(tau)); }

double WindowOverlaps::pump_probe_yield(double tau) const {
  const auto p = phases(excitation, tau);
  cd acc = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m)
    for (std::size_t n = 0; n < p.size(); ++n) acc += std::conj(p[m]) * G(m, n) * p[n];
  return std::max(0.0, acc.real());
}

double WindowOverlaps::windowed_yield(double tau) const {
  return background_yield() + pump_probe_yield(tau) + 2.0 * interference(tau).real();
}

std::vector<double> DelayScan::taus() const { return column(&ScanRecord::tau); }

std::vector<double> DelayScan::column(double ScanRecord::*field) const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.*field);
  return out;
}

DelayScan scan_model(const WindowOverlaps& ov, const std::vector<double>& taus) {
  DelayScan scan;
  scan.records.reserve(taus.size());
  for (double tau : taus) {
    ScanRecord r;
    r.tau = tau;
    r.A_M = ov.modulation_amplitude(tau);
    r.P_beta = ov.pump_probe_yield(tau);
    r.P_bg = ov.background_yield();
    r.yield = ov.windowed_yield(tau);
    scan.records.push_back(r);
  }
  return scan;
}

double spectral_hwhm(const Pulse& pulse) {
  const double w = pulse.central_energy();
  const double peak = std::abs(envelope_spectrum(pulse, w));
  double a = 0.0;
  double b = 3.0 * std::numbers::pi / pulse.total_duration();
  for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + b); ++it) {
    const double c = 0.5 * (a + b);
    (std::abs(envelope_spectrum(pulse, w + c)) > 0.5 * peak ? a : b) = c;
  }
  return 0.5 * (a + b);
}

SynthesisResult synthesize_amplitudes(const ResonanceSet& res, const Pulse& pump, const Pulse& probe,
                                      const Couplings& c, const EnergyAxis& axis) {
  axis.validate();
  if (c.excitation.size() != res.size())
    throw StructuralError("couplings must list one excitation strength per resonance");
  if (!(c.sharing_width > 0.0)) throw DomainError("sharing width must be positive");

  SynthesisResult out;
  PathAmplitudes& a = out.amps;
  a.e1 = axis;
  a.e2 = axis;
  const int n = axis.bins;
  const double two_ln2 = 2.0 * std::log(2.0);
  const double sigma_probe = spectral_hwhm(probe) / std::sqrt(two_ln2);
  const double sigma_seq = c.sequential_width > 0.0 ? c.sequential_width : sigma_probe;
  const double sigma_total = std::sqrt(2.0) * sigma_probe;
  const double w = probe.central_energy();
  const double E0 = res.ground_energy();
  const double t_mid = 0.5 * probe.total_duration();

  a.gamma.resize(n, n);
  const double s1 = w - c.I1, s2 = w - c.I2;
  for (int i = 0; i < n; ++i) {
    const double e1 = axis.center(i);
    for (int j = 0; j < n; ++j) {
      const double e2 = axis.center(j);
      double v = 0.0;
      if (c.gamma_sequential != 0.0 && c.I2 > c.I1) {
        v += c.gamma_sequential * (gaussian(e1 - s1, sigma_seq) * gaussian(e2 - s2, sigma_seq) +
                                   gaussian(e1 - s2, sigma_seq) * gaussian(e2 - s1, sigma_seq));
      }
      v += c.gamma_nonsequential * gaussian(e1 + e2 - E0 - 2.0 * w, sigma_total) *
           gaussian(e1 - e2, c.sharing_width);
      // same timing reference as beta: the probe spectrum is phased to the pulse start
      a.gamma(i, j) = std::polar(v, (e1 + e2 - E0 - 2.0 * w) * t_mid);
    }
  }

  const double pump_peak = std::abs(envelope_spectrum(pump, pump.central_energy()));
  const double probe_peak = std::abs(envelope_spectrum(probe, w));
  const double total_lo = 2.0 * axis.lo, total_hi = 2.0 * axis.hi;
  for (std::size_t m = 0; m < res.size(); ++m) {
    const auto& st = res.states()[m];
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
    const double final_energy = st.energy.real() + w;
    if (final_energy < total_lo || final_energy > total_hi) {
      out.warnings.push_back("resonance '" + st.label + "' cannot reach the energy grid; amplitude set to 0");
      a.beta.push_back(std::move(b));
      continue;
    }
    const cd weight = c.excitation[m] * envelope_spectrum(pump, st.energy.real() - E0) / pump_peak;
    if (std::abs(weight) < 1e-12 * std::abs(c.excitation[m]) && c.excitation[m] != 0.0) {
      out.warnings.push_back("resonance '" + st.label + "' lies outside the pump bandwidth");
    }
    for (int i = 0; i < n; ++i) {
      const double e1 = axis.center(i);
      for (int j = 0; j < n; ++j) {
        const double e2 = axis.center(j);
        b(i, j) = weight * envelope_spectrum(probe, e1 + e2 - st.energy.real()) / probe_peak *
                  gaussian(e1 - e2, c.sharing_width);
      }
    }
    a.beta.push_back(std::move(b));
  }
  return out;
}

}  // namespace attobeat
