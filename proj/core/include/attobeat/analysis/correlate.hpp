#pragma once

#include <vector>

namespace attobeat::analysis {

struct CorrelationReport {
  double pearson_r = 0.0;  // at zero lag
  int lag = 0;             // scan points of b relative to a at maximal r
  double r_at_lag = 0.0;
  double nrmsd = 0.0;      // rms(a - b) / (max b - min b)
};

// Pearson correlation on mean-removed series with a lag scan over +-10% of
// the length. Needs equal lengths >= 8; zero variance throws DomainError.
CorrelationReport correlate(const std::vector<double>& a, const std::vector<double>& b);

double pearson(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace attobeat::analysis
