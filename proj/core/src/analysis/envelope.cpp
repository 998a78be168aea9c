#include "attobeat/analysis/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "attobeat/errors.hpp"

namespace attobeat::analysis {

namespace {

double uniform_step(const std::vector<double>& tau) {
  const double step = (tau.back() - tau.front()) / static_cast<double>(tau.size() - 1);
  for (std::size_t i = 1; i < tau.size(); ++i) {
    if (std::abs(tau[i] - tau[i - 1] - step) > 1e-6 * std::abs(step))
      throw DomainError("envelope extraction needs uniformly spaced delays");
  }
  if (!(step > 0.0)) throw DomainError("delays must be strictly increasing");
  return step;
}

std::vector<double> interpolate(const std::vector<double>& xs, const std::vector<double>& ys,
                                const std::vector<double>& at) {
  std::vector<double> out(at.size());
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double x = at[i];
    if (x <= xs.front()) {
      out[i] = ys.front();
      continue;
    }
    if (x >= xs.back()) {
      out[i] = ys.back();
      continue;
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    out[i] = ys[k - 1] + t * (ys[k] - ys[k - 1]);
  }
  return out;
}

// vertex of the parabola through three samples (refines extremum position/value)
void refine(double x0, double h, double ym, double y0, double yp, double& x, double& y) {
  const double den = ym - 2.0 * y0 + yp;
  if (den == 0.0) {
    x = x0;
    y = y0;
    return;
  }
  const double d = 0.5 * (ym - yp) / den;
  x = x0 + d * h;
  y = y0 - 0.25 * (ym - yp) * d;
}

}  // namespace

std::vector<double> envelope_extract(const std::vector<double>& tau, const std::vector<double>& s, double W,
                                     EnvelopeMethod method) {
  if (tau.size() != s.size()) throw StructuralError("delay and series lengths differ");
  if (tau.size() < 6) throw DomainError("envelope extraction needs at least six samples");
  if (!(W > 0.0)) throw DomainError("fast frequency must be positive");
  const double step = uniform_step(tau);
  const double period = 2.0 * std::numbers::pi / W;
  const double ppp = period / step;
  if (ppp < 6.0) {
    throw DomainError("scan undersamples the fast oscillation: " + std::to_string(ppp) +
                      " points per period, need >= 6 (Nyquist violation)");
  }
  const int n = static_cast<int>(tau.size());
  std::vector<double> env(n);

  if (method == EnvelopeMethod::Demodulation) {
    const int half = std::max(3, static_cast<int>(std::ceil(0.5 * ppp)));
    const int win = std::min(n, 2 * half + 1);
    for (int i = 0; i < n; ++i) {
      const int a = std::clamp(i - half, 0, n - win);
      Eigen::MatrixXd A(win, 3);
      Eigen::VectorXd y(win);
      for (int k = 0; k < win; ++k) {
        const double t = tau[a + k] - tau[i];
        A(k, 0) = 1.0;
        A(k, 1) = std::cos(W * t);
        A(k, 2) = std::sin(W * t);
        y(k) = s[a + k];
      }
      const Eigen::Vector3d c = A.colPivHouseholderQr().solve(y);
      env[i] = std::hypot(c(1), c(2));
    }
    return env;
  }

  std::vector<double> xmax, ymax, xmin, ymin;
  for (int i = 1; i + 1 < n; ++i) {
    double x, y;
    if (s[i] >= s[i - 1] && s[i] > s[i + 1]) {
      refine(tau[i], step, s[i - 1], s[i], s[i + 1], x, y);
      xmax.push_back(x);
      ymax.push_back(y);
    } else if (s[i] <= s[i - 1] && s[i] < s[i + 1]) {
      refine(tau[i], step, s[i - 1], s[i], s[i + 1], x, y);
      xmin.push_back(x);
      ymin.push_back(y);
    }
  }
  if (xmax.size() < 2 || xmin.size() < 2) throw DomainError("too few extrema for envelope interpolation");
  const auto up = interpolate(xmax, ymax, tau);
  const auto lo = interpolate(xmin, ymin, tau);
  for (int i = 0; i < n; ++i) env[i] = 0.5 * (up[i] - lo[i]);
  return env;
}

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw StructuralError("linear fit needs two or more matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("linear fit needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) ss += std::pow(y[i] - f.intercept - f.slope * x[i], 2);
  f.rms = std::sqrt(ss / n);
  return f;
}

LineFit log_linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> ly(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw DomainError("log-linear fit needs positive values");
    ly[i] = std::log(y[i]);
  }
  return linear_fit(x, ly);
}

}  // namespace attobeat::analysis
