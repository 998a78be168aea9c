#include "attobeat/tdse/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "attobeat/errors.hpp"
#include "attobeat/tdse/fft.hpp"

namespace attobeat::tdse {

MomentumSpectrum di_spectrum(const Wavefunction2e& psi, const DIRegionSpec& region) {
  const Grid2e& g = psi.grid();
  if (!(region.R >= 0.0) || !(region.width > 0.0)) throw DomainError("DI region needs R >= 0 and width > 0");
  if (region.R + region.width >= g.L) {
    throw DomainError("DI mask support is truncated by the grid boundary (R + w >= L)");
  }
  const int n = g.n;
  const double h = g.h();
  std::vector<double> m(n);
  for (int i = 0; i < n; ++i) {
    const double s = std::clamp((std::abs(g.x(i)) - region.R) / region.width, 0.0, 1.0);
    const double v = std::sin(0.5 * std::numbers::pi * s);
    m[i] = v * v;
  }
  Wavefunction2e work = psi;
  cd* p = work.data();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(i) * n + j] *= m[i] * m[j];
  Fft2 fft(n);
  fft.forward(p);

  // psi~(k) = h^2/(2 pi) sum psi e^{-ikx}; P per bin = |psi~|^2 dk^2
  MomentumSpectrum out;
  out.dk = 2.0 * std::numbers::pi / (n * h);
  const double scale = std::pow(h * h / (2.0 * std::numbers::pi) * out.dk, 2);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = (i + n / 2) % n;  // ascending k
  out.k.resize(n);
  for (int a = 0; a < n; ++a) out.k[a] = g.k(order[a]);
  out.P.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.P(a, b) = std::norm(p[static_cast<std::size_t>(order[a]) * n + order[b]]) * scale;
  return out;
}

double windowed_yield(const MomentumSpectrum& spec, const EnergyWindow& window) {
  window.validate();
  const int n = static_cast<int>(spec.k.size());
  std::vector<char> in(n, 0);
  bool any = false;
  for (int i = 0; i < n; ++i) {
    const double e = spec.energy(i);
    in[i] = e >= window.lo && e < window.hi;
    any = any || in[i];
  }
  if (!any) throw DomainError("energy window contains no momentum bins");
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (in[i]) s1 += spec.P(i, j);
      if (in[j]) s2 += spec.P(i, j);
    }
  return 0.5 * (s1 + s2);
}

Eigen::MatrixXd energy_map(const MomentumSpectrum& spec, const EnergyAxis& axis) {
  axis.validate();
  const int n = static_cast<int>(spec.k.size());
  std::vector<int> bin(n, -1);
  for (int i = 0; i < n; ++i) {
    const double e = spec.energy(i);
    const int b = static_cast<int>(std::floor((e - axis.lo) / axis.width()));
    if (e >= axis.lo && b >= 0 && b < axis.bins) bin[i] = b;
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(axis.bins, axis.bins);
  for (int i = 0; i < n; ++i) {
    if (bin[i] < 0) continue;
    for (int j = 0; j < n; ++j)
      if (bin[j] >= 0) out(bin[i], bin[j]) += spec.P(i, j);
  }
  return out;
}

}  // namespace attobeat::tdse
