#pragma once

#include <vector>

namespace attobeat::analysis {

enum class EnvelopeMethod {
  Demodulation,  // local least squares c0 + a cos(W t) + b sin(W t) over one fast period
  LocalExtrema,  // (upper - lower)/2 from linearly interpolated extrema
};

// Amplitude envelope of the fast oscillation at angular frequency `fast_frequency`:
// A cos(W t) yields A. Sampling must be uniform with at least six points per
// fast period, otherwise DomainError names the Nyquist violation.
std::vector<double> envelope_extract(const std::vector<double>& tau, const std::vector<double>& series,
                                     double fast_frequency,
                                     EnvelopeMethod method = EnvelopeMethod::Demodulation);

// Least-squares line through (x, log y); returns {slope, intercept}.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};
LineFit log_linear_fit(const std::vector<double>& x, const std::vector<double>& y);
LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace attobeat::analysis
