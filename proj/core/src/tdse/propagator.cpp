#include "attobeat/tdse/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "attobeat/errors.hpp"

namespace attobeat::tdse {

namespace {

void multiply_potential(cd* psi, const cd* halfV, const std::vector<cd>& a, int n) {
  for (int i = 0; i < n; ++i) {
    cd* row = psi + static_cast<std::size_t>(i) * n;
    const cd* hv = halfV + static_cast<std::size_t>(i) * n;
    const cd ai = a[i];
    for (int j = 0; j < n; ++j) row[j] *= hv[j] * ai * a[j];
  }
}

}  // namespace

SplitOperator::SplitOperator(const Grid2e& grid, const SoftCoreModel& model, const PropagatorOptions& opts)
    : grid_(grid), model_(model), opts_(opts) {
  grid_.validate();
  model_.validate();
  if (!(opts_.dt > 0.0)) throw DomainError("time step must be positive");
  const int n = grid_.n;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  fft_ = std::make_shared<Fft2>(n);
  x_ = grid_.coordinates();
  k2_.resize(n);
  for (int i = 0; i < n; ++i) k2_[i] = grid_.k(i) * grid_.k(i);

  V_.resize(nn);
  halfV_.resize(nn);
  kin_phase_.resize(nn);
  const double dt = opts_.dt;
  const double inv = 1.0 / static_cast<double>(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n + j;
      V_[idx] = model_.potential(x_[i], x_[j]);
      halfV_[idx] = std::polar(1.0, -0.5 * dt * V_[idx]);
      kin_phase_[idx] = std::polar(inv, -0.5 * dt * (k2_[i] + k2_[j]));
    }

  mask_.assign(n, 1.0);
  if (opts_.absorbing) {
    const double w = opts_.absorber.width;
    if (!(w > 0.0) || w >= grid_.L) throw DomainError("absorber width must lie in (0, L)");
    const double edge = grid_.L - w;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(x_[i]) - edge;
      if (d > 0.0) {
        const double c = std::cos(0.5 * std::numbers::pi * std::min(d / w, 1.0));
        mask_[i] = std::pow(std::max(c, 0.0), opts_.absorber.power);
      }
    }
  }
}

void SplitOperator::step_with(Wavefunction2e& psi, double field, double dt, const cvec* kin_phase) const {
  const int n = grid_.n;
  std::vector<cd> a(n);
  for (int i = 0; i < n; ++i) a[i] = std::polar(1.0, -0.5 * dt * field * x_[i]);

  cvec local_half, local_kin;
  const cd* hv = halfV_.data();
  const cd* kp = kin_phase ? kin_phase->data() : nullptr;
  if (!kin_phase) {
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    local_half.resize(nn);
    local_kin.resize(nn);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * n + j;
        local_half[idx] = std::polar(1.0, -0.5 * dt * V_[idx]);
        local_kin[idx] = std::polar(1.0 / static_cast<double>(nn), -0.5 * dt * (k2_[i] + k2_[j]));
      }
    hv = local_half.data();
    kp = local_kin.data();
  }

  cd* p = psi.data();
  multiply_potential(p, hv, a, n);
  fft_->forward(p);
  const std::size_t nn = psi.size();
  for (std::size_t i = 0; i < nn; ++i) p[i] *= kp[i];
  fft_->backward(p);
  multiply_potential(p, hv, a, n);
  if (opts_.absorbing) {
    for (int i = 0; i < n; ++i) {
      cd* row = p + static_cast<std::size_t>(i) * n;
      const double mi = mask_[i];
      for (int j = 0; j < n; ++j) row[j] *= mi * mask_[j];
    }
  }
}

double max_spectral_span(const Grid2e& grid, const SoftCoreModel& model) {
  double kmax = 0.0;
  for (int i = 0; i < grid.n; ++i) kmax = std::max(kmax, std::abs(grid.k(i)));
  const auto x = grid.coordinates();
  double vmin = model.potential(x[0], x[0]), vmax = vmin;
  for (double a : x)
    for (double b : x) {
      const double v = model.potential(a, b);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  return kmax * kmax + (vmax - vmin);
}

void SplitOperator::step(Wavefunction2e& psi, double field) const { step_with(psi, field, opts_.dt, &kin_phase_); }

long SplitOperator::propagate(Wavefunction2e& psi, const std::vector<Pulse>& pulses, double t0, double t1) const {
  if (psi.n() != grid_.n) throw StructuralError("wavefunction does not match the propagator grid");
  if (t1 < t0) throw DomainError("propagation interval must not run backwards");
  const double dt = opts_.dt;
  const double span = t1 - t0;
  long steps = static_cast<long>(std::floor(span / dt + 1e-9));
  const double rest = span - steps * dt;
  const double n0 = psi.norm();
  long taken = 0;
  auto check = [&](double t) {
    const double nrm = psi.norm();
    if (!std::isfinite(nrm) || nrm > n0 * (1.0 + 1e-6) + 1e-300) {
      throw PropagationError("norm blow-up at t = " + std::to_string(t) + " (norm " + std::to_string(nrm) +
                             ", initial " + std::to_string(n0) + "); reduce dt");
    }
  };
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + s * dt;
    step_with(psi, total_field(pulses, t + 0.5 * dt), dt, &kin_phase_);
    if (++taken % 256 == 0) check(t + dt);
  }
  if (rest > 1e-12 * dt) {
    const double t = t0 + steps * dt;
    step_with(psi, total_field(pulses, t + 0.5 * rest), rest, nullptr);
    ++taken;
  }
  check(t1);
  return taken;
}

void SplitOperator::apply_hamiltonian(const Wavefunction2e& psi, Wavefunction2e& out, double field) const {
  const int n = grid_.n;
  const std::size_t nn = psi.size();
  if (out.n() != n) out = Wavefunction2e(grid_);
  std::copy(psi.data(), psi.data() + nn, out.data());
  cd* p = out.data();
  fft_->forward(p);
  const double inv = 1.0 / static_cast<double>(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(i) * n + j] *= 0.5 * (k2_[i] + k2_[j]) * inv;
  fft_->backward(p);
  const cd* q = psi.data();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n + j;
      p[idx] += (V_[idx] + field * (x_[i] + x_[j])) * q[idx];
    }
}

double SplitOperator::energy(const Wavefunction2e& psi) const {
  Wavefunction2e hpsi(grid_);
  apply_hamiltonian(psi, hpsi);
  return (psi.inner(hpsi) / psi.norm()).real();
}

double propagator_phase_energy(const SplitOperator& prop, const Wavefunction2e& psi) {
  Wavefunction2e p = psi;
  prop.step(p, 0.0);
  return -std::arg(psi.inner(p)) / prop.dt();
}

Wavefunction2e stationary_filter(const SplitOperator& prop, const Wavefunction2e& psi, double energy,
                                 double duration, int passes) {
  if (prop.absorbing()) throw DomainError("stationary filter requires a non-absorbing propagator");
  const double dt = prop.dt();
  const long steps = std::max<long>(1, std::lround(duration / dt));
  Wavefunction2e cur = psi;
  double E = energy;
  for (int pass = 0; pass < passes; ++pass) {
    Wavefunction2e acc(prop.grid());
    Wavefunction2e p = cur;
    for (long s = 0; s <= steps; ++s) {
      const double t = s * dt;
      const double w = std::pow(std::sin(std::numbers::pi * t / (steps * dt)), 4);
      if (w > 0.0) {
        const cd c = w * std::polar(1.0, E * t);
        cd* a = acc.data();
        const cd* q = p.data();
        for (std::size_t i = 0; i < acc.size(); ++i) a[i] += c * q[i];
      }
      if (s < steps) prop.step(p, 0.0);
    }
    acc.symmetrize();
    acc.normalize();
    cur = std::move(acc);
    E = propagator_phase_energy(prop, cur);
  }
  return cur;
}

}  // namespace attobeat::tdse
