#pragma once

#include <cstdint>
#include <vector>

namespace attobeat::analysis {

struct BeatComponent {
  double amp = 0.0;    // >= 0
  double freq = 0.0;   // angular frequency, a.u.
  double gamma = 0.0;  // amplitude decay rate, >= 0
  double phase = 0.0;  // (-pi, pi]
};

// y(t) = offset + sum_c amp e^{-gamma (t - t_ref)} cos(freq (t - t_ref) + phase)
struct BeatFit {
  std::vector<BeatComponent> components;  // ascending frequency
  double offset = 0.0;
  double residual = 0.0;  // rms of data - model
  double t_ref = 0.0;
  bool converged = true;

  double operator()(double t) const;
};

struct BeatFitOptions {
  int max_components = 4;
  int starts = 16;
  std::uint64_t seed = 20240601;
  int zero_padding = 16;
  // a component is kept only if it lowers the residual below this fraction
  double improvement = 0.9;
};

// Nonlinear least squares (trust-region Levenberg-Marquardt) with components
// added greedily from periodogram peaks of the current residual and a seeded
// multi-start around each initialization. Deterministic for a given seed.
// Needs t.size() >= 4 (3 max_components + 1).
BeatFit fit_damped_cosines(const std::vector<double>& t, const std::vector<double>& y,
                           const BeatFitOptions& opts = {});

std::vector<double> evaluate(const BeatFit& fit, const std::vector<double>& t);

}  // namespace attobeat::analysis
