#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attobeat/pulse.hpp"
#include "attobeat/resonance_set.hpp"

namespace attobeat {

// Uniform bins over [lo, hi]; values are bin centers.
struct EnergyAxis {
  double lo = 0.0;
  double hi = 3.0;
  int bins = 512;

  double width() const { return (hi - lo) / bins; }
  double center(int i) const { return lo + (i + 0.5) * width(); }
  void validate() const;
};

// Applied to electron 1; electron 2 is integrated over its whole axis.
struct EnergyWindow {
  double lo = 0.0;
  double hi = 0.0;
  void validate() const;
};

// (omega - I2, omega - I1). Throws DomainError unless omega > I2 > I1.
EnergyWindow default_window(double omega, double I1, double I2);

struct PathAmplitudes {
  EnergyAxis e1, e2;
  Eigen::MatrixXcd gamma;              // e1.bins x e2.bins
  std::vector<Eigen::MatrixXcd> beta;  // one per resonance

  double bin_area() const { return e1.width() * e2.width(); }
  void validate() const;
};

// sum_m e^{-i(E_m - E_0) tau} beta^m
Eigen::MatrixXcd beta_hat(const PathAmplitudes& amps, const ResonanceSet& res, double tau);

// |gamma + beta_hat|^2 per bin (the alpha background is not included)
Eigen::MatrixXd probability_map(const PathAmplitudes& amps, const ResonanceSet& res, double tau);

double modulation_amplitude(const PathAmplitudes& amps, const ResonanceSet& res,
                            const EnergyWindow& window, double tau);
double pump_probe_yield(const PathAmplitudes& amps, const ResonanceSet& res,
                        const EnergyWindow& window, double tau);
double background_yield(const PathAmplitudes& amps, const EnergyWindow& window);

// Window integrals that make every observable a cheap function of tau:
//   g_m = \int_M gamma^* beta^m,  G_mn = \int_M beta^m* beta^n,  N = \int_M |gamma|^2.
struct WindowOverlaps {
  double gamma_norm = 0.0;
  std::vector<std::complex<double>> g;
  Eigen::MatrixXcd G;
  std::vector<std::complex<double>> excitation;  // E_m - E_0

  // \int_M gamma^* beta_hat(tau)
  std::complex<double> interference(double tau) const;
  double modulation_amplitude(double tau) const;
  double pump_probe_yield(double tau) const;
  double background_yield() const { return 2.0 * gamma_norm; }
  // \int_M |alpha|^2 + |gamma + beta_hat|^2 with |alpha|^2 = |gamma|^2
  double windowed_yield(double tau) const;
};

WindowOverlaps window_overlaps(const PathAmplitudes& amps, const ResonanceSet& res,
                               const EnergyWindow& window);

struct ScanRecord {
  double tau = 0.0;
  double A_M = 0.0;
  double P_beta = 0.0;
  double P_bg = 0.0;
  double yield = 0.0;
  bool ok = true;
};

struct DelayScan {
  std::vector<ScanRecord> records;

  std::vector<double> taus() const;
  std::vector<double> column(double ScanRecord::*field) const;
};

DelayScan scan_model(const WindowOverlaps& ov, const std::vector<double>& taus);

// Generator for gamma and beta^m when no ab-initio amplitudes are available.
struct Couplings {
  std::vector<std::complex<double>> excitation;  // d_m, one per resonance
  double sharing_width = 0.5;      // Gaussian width in (e1 - e2) for beta and nonsequential gamma
  double gamma_sequential = 1.0;   // peak amplitude at the sequential peaks
  double sequential_width = 0.0;   // 0: use the probe bandwidth
  double gamma_nonsequential = 0.1;
  double I1 = 0.0;  // thresholds locate the sequential peaks
  double I2 = 0.0;
};

struct SynthesisResult {
  PathAmplitudes amps;
  std::vector<std::string> warnings;
};

SynthesisResult synthesize_amplitudes(const ResonanceSet& res, const Pulse& pump, const Pulse& probe,
                                      const Couplings& couplings, const EnergyAxis& axis = {});

// Spectral bandwidth: half width at half maximum of |envelope_spectrum|.
double spectral_hwhm(const Pulse& pulse);

}  // namespace attobeat
