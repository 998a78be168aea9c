#include "attobeat/analysis/correlate.hpp"

#include <algorithm>
#include <cmath>

#include "attobeat/errors.hpp"

namespace attobeat::analysis {

namespace {

double pearson_range(const std::vector<double>& a, const std::vector<double>& b, std::size_t a0, std::size_t b0,
                     std::size_t len) {
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < len; ++i) {
    ma += a[a0 + i];
    mb += b[b0 + i];
  }
  ma /= static_cast<double>(len);
  mb /= static_cast<double>(len);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const double da = a[a0 + i] - ma, db = b[b0 + i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw DomainError("correlation of a zero-variance series");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw StructuralError("pearson needs equal lengths >= 2");
  return pearson_range(a, b, 0, 0, a.size());
}

CorrelationReport correlate(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw StructuralError("correlated series must have equal length");
  if (a.size() < 8) throw DomainError("correlation needs at least 8 points");
  const std::size_t n = a.size();
  CorrelationReport rep;
  rep.pearson_r = pearson_range(a, b, 0, 0, n);
  rep.r_at_lag = rep.pearson_r;
  const int max_lag = static_cast<int>(n / 10);
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    if (lag == 0) continue;
    const std::size_t len = n - static_cast<std::size_t>(std::abs(lag));
    const double r = lag > 0 ? pearson_range(a, b, 0, lag, len) : pearson_range(a, b, -lag, 0, len);
    if (r > rep.r_at_lag) {
      rep.r_at_lag = r;
      rep.lag = lag;
    }
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
  const auto [mn, mx] = std::minmax_element(b.begin(), b.end());
  rep.nrmsd = std::sqrt(ss / static_cast<double>(n)) / (*mx - *mn);
  return rep;
}

}  // namespace attobeat::analysis
