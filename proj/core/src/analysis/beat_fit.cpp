#include "attobeat/analysis/beat_fit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "attobeat/errors.hpp"

namespace attobeat::analysis {

namespace {

constexpr double kPi = std::numbers::pi;

// parameters: [offset, (A, w, s, phi) per component], gamma = s^2
struct Residual : Eigen::DenseFunctor<double> {
  const std::vector<double>& t;
  const std::vector<double>& y;
  int k;
  Residual(const std::vector<double>& t_, const std::vector<double>& y_, int k_)
      : Eigen::DenseFunctor<double>(1 + 4 * k_, static_cast<int>(t_.size())), t(t_), y(y_), k(k_) {}

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
    for (std::size_t i = 0; i < t.size(); ++i) {
      double v = p(0);
      for (int c = 0; c < k; ++c) {
        const double A = p(1 + 4 * c), w = p(2 + 4 * c), s = p(3 + 4 * c), ph = p(4 + 4 * c);
        v += A * std::exp(-s * s * t[i]) * std::cos(w * t[i] + ph);
      }
      f(i) = v - y[i];
    }
    return 0;
  }

  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& J) const {
    for (std::size_t i = 0; i < t.size(); ++i) {
      J(i, 0) = 1.0;
      for (int c = 0; c < k; ++c) {
        const double A = p(1 + 4 * c), w = p(2 + 4 * c), s = p(3 + 4 * c), ph = p(4 + 4 * c);
        const double e = std::exp(-s * s * t[i]);
        const double co = std::cos(w * t[i] + ph), si = std::sin(w * t[i] + ph);
        J(i, 1 + 4 * c) = e * co;
        J(i, 2 + 4 * c) = -A * e * t[i] * si;
        J(i, 3 + 4 * c) = -2.0 * s * t[i] * A * e * co;
        J(i, 4 + 4 * c) = -A * e * si;
      }
    }
    return 0;
  }
};

double rms(const Residual& r, const Eigen::VectorXd& p) {
  Eigen::VectorXd f(r.values());
  r(p, f);
  return std::sqrt(f.squaredNorm() / static_cast<double>(f.size()));
}

bool run_lm(Residual& r, Eigen::VectorXd& p) {
  Eigen::LevenbergMarquardt<Residual> lm(r);
  lm.setXtol(1e-15);
  lm.setFtol(1e-15);
  lm.setGtol(0.0);
  lm.setMaxfev(400 * static_cast<int>(p.size()));
  const auto status = lm.minimize(p);
  return status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation &&
         status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters;
}

// strongest periodogram line of the residual: (w, amplitude, phase)
void periodogram_peak(const std::vector<double>& t, const std::vector<double>& r, int padding, double& w,
                      double& amp, double& phase) {
  const std::size_t n = t.size();
  const double span = t.back() - t.front();
  const double dt = span / static_cast<double>(n - 1);
  const int m = static_cast<int>(padding * n / 2);
  const double wmax = kPi / dt;
  std::vector<double> win(n);
  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    win[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1));
    wsum += win[i];
  }
  double best = -1.0;
  std::complex<double> bestR = 0.0;
  w = 0.0;
  for (int q = 0; q <= m; ++q) {
    const double wq = wmax * q / m;
    std::complex<double> R = 0.0;
    for (std::size_t i = 0; i < n; ++i) R += win[i] * r[i] * std::polar(1.0, -wq * t[i]);
    if (std::abs(R) > best) {
      best = std::abs(R);
      bestR = R;
      w = wq;
    }
  }
  amp = (w == 0.0 ? 1.0 : 2.0) * std::abs(bestR) / wsum;
  phase = std::arg(bestR);
}

double wrap(double ph) {
  ph = std::remainder(ph, 2.0 * kPi);
  if (ph <= -kPi) ph += 2.0 * kPi;
  return ph;
}

}  // namespace

double BeatFit::operator()(double t) const {
  double v = offset;
  for (const auto& c : components)
    v += c.amp * std::exp(-c.gamma * (t - t_ref)) * std::cos(c.freq * (t - t_ref) + c.phase);
  return v;
}

std::vector<double> evaluate(const BeatFit& fit, const std::vector<double>& t) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = fit(t[i]);
  return out;
}

BeatFit fit_damped_cosines(const std::vector<double>& t_in, const std::vector<double>& y_in,
                           const BeatFitOptions& opts) {
  const std::size_t n = t_in.size();
  if (y_in.size() != n) throw StructuralError("time and series lengths differ");
  if (opts.max_components < 0) throw DomainError("max_components must be non-negative");
  if (n < static_cast<std::size_t>(4 * (3 * opts.max_components + 1)) || n < 4) {
    throw DomainError("series of length " + std::to_string(n) + " is too short for " +
                      std::to_string(opts.max_components) + " components");
  }
  for (std::size_t i = 1; i < n; ++i)
    if (!(t_in[i] > t_in[i - 1])) throw DomainError("fit abscissae must be strictly increasing");

  // work in standardized units: t from t0, y centred and scaled
  BeatFit fit;
  fit.t_ref = t_in.front();
  std::vector<double> t(n), y(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += y_in[i];
  mean /= static_cast<double>(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(y_in[i] - mean));
  fit.offset = mean;
  if (scale <= 1e-13 * std::max(std::abs(mean), 1e-300)) {
    fit.residual = 0.0;
    return fit;
  }
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = t_in[i] - fit.t_ref;
    y[i] = (y_in[i] - mean) / scale;
  }
  const double span = t.back();
  const double bin = 2.0 * kPi / span;

  Eigen::VectorXd best_p = Eigen::VectorXd::Zero(1);
  double best_res = std::sqrt(std::accumulate(y.begin(), y.end(), 0.0, [](double a, double b) { return a + b * b; }) /
                              static_cast<double>(n));
  bool converged = true;
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;

  for (int k = 1; k <= opts.max_components; ++k) {
    const Residual prev(t, y, k - 1);
    Eigen::VectorXd fprev(n);
    prev(best_p, fprev);  // model - data
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = -fprev(i);
    double w0, a0, ph0;
    periodogram_peak(t, r, opts.zero_padding, w0, a0, ph0);

    Eigen::VectorXd init(1 + 4 * k);
    init.head(1 + 4 * (k - 1)) = best_p;
    init.segment(1 + 4 * (k - 1), 4) << a0, w0, std::sqrt(0.1 / span), ph0;

    Residual res(t, y, k);
    Eigen::VectorXd cand_best;
    double cand_res = INFINITY;
    bool cand_ok = true;
    for (int s = 0; s < std::max(1, opts.starts); ++s) {
      Eigen::VectorXd p = init;
      if (s > 0) {
        for (int c = 0; c < k; ++c) {
          p(1 + 4 * c) *= std::exp(0.2 * gauss(rng));
          p(2 + 4 * c) = std::max(0.0, p(2 + 4 * c) + 0.3 * bin * gauss(rng));
          p(3 + 4 * c) *= std::exp(0.5 * gauss(rng));
          p(4 + 4 * c) += 0.5 * gauss(rng);
        }
      }
      const bool ok = run_lm(res, p);
      const double rr = rms(res, p);
      if (std::isfinite(rr) && rr < cand_res) {
        cand_res = rr;
        cand_best = p;
        cand_ok = ok;
      }
    }
    if (!(cand_res < opts.improvement * best_res)) break;
    best_p = cand_best;
    best_res = cand_res;
    converged = cand_ok;
    if (best_res < 1e-13) break;
  }

  const int k = static_cast<int>((best_p.size() - 1) / 4);
  fit.offset = mean + scale * best_p(0);
  for (int c = 0; c < k; ++c) {
    BeatComponent bc;
    bc.amp = scale * best_p(1 + 4 * c);
    bc.freq = best_p(2 + 4 * c);
    bc.gamma = best_p(3 + 4 * c) * best_p(3 + 4 * c);
    bc.phase = best_p(4 + 4 * c);
    if (bc.freq < 0.0) {
      bc.freq = -bc.freq;
      bc.phase = -bc.phase;
    }
    if (bc.amp < 0.0) {
      bc.amp = -bc.amp;
      bc.phase += kPi;
    }
    bc.phase = wrap(bc.phase);
    fit.components.push_back(bc);
  }
  std::sort(fit.components.begin(), fit.components.end(),
            [](const BeatComponent& a, const BeatComponent& b) { return a.freq < b.freq; });
  fit.residual = best_res * scale;
  fit.converged = converged && std::isfinite(fit.residual);
  return fit;
}

}  // namespace attobeat::analysis
