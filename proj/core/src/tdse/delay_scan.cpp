#include "attobeat/tdse/delay_scan.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <numbers>

#include "attobeat/errors.hpp"

namespace attobeat::tdse {

TdseScanner::TdseScanner(TdseScanConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.grid.validate();
  cfg_.model.validate();
  cfg_.window.validate();
  const double w = cfg_.pump.central_energy();
  if (cfg_.dt * w > 2.0 * std::numbers::pi / 20.0 + 1e-12) {
    throw DomainError("time step does not resolve the carrier (need >= 20 steps per period)");
  }
  // Strang quasi-energies are only defined modulo 2 pi / dt; the whole grid
  // spectrum must fit inside one period or the pulses couple the ground state
  // to aliased high-energy continuum.
  const double span = max_spectral_span(cfg_.grid, cfg_.model);
  if (cfg_.dt * span >= 2.0 * std::numbers::pi) {
    throw DomainError("time step aliases the grid spectrum (need dt < " +
                      std::to_string(2.0 * std::numbers::pi / span) + ")");
  }
  if (cfg_.region.R + cfg_.region.width >= cfg_.grid.L - cfg_.absorber.width) {
    throw DomainError("DI region overlaps the absorbing boundary");
  }
  const GroundState gs = ground_state(cfg_.grid, cfg_.model, cfg_.ground);
  E0_ = gs.energy;

  PropagatorOptions clean;
  clean.dt = cfg_.dt;
  const SplitOperator free_prop(cfg_.grid, cfg_.model, clean);
  psi0_ = stationary_filter(free_prop, gs.psi, E0_, cfg_.filter_time, cfg_.filter_passes);
  E0_prop_ = propagator_phase_energy(free_prop, psi0_);

  PropagatorOptions opts;
  opts.dt = cfg_.dt;
  opts.absorbing = true;
  opts.absorber = cfg_.absorber;
  prop_ = std::make_unique<SplitOperator>(cfg_.grid, cfg_.model, opts);
  ion_ = ion_spectrum(cfg_.grid, cfg_.model);
}

void TdseScanner::to_background(Wavefunction2e& psi, double t) const {
  Wavefunction2e g = psi0_;
  const cd ph = std::polar(1.0, -E0_prop_ * t);
  for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] *= ph;
  const cd c0 = g.inner(psi);
  Wavefunction2e exc = psi;
  for (std::size_t i = 0; i < exc.size(); ++i) exc.data()[i] -= c0 * g.data()[i];
  remove_bound_orbitals(exc, ion_);
  for (std::size_t i = 0; i < psi.size(); ++i) psi.data()[i] = c0 * g.data()[i] + exc.data()[i];
}

Wavefunction2e TdseScanner::after_pump() const {
  Wavefunction2e psi = psi0_;
  const double T = cfg_.pump.total_duration();
  prop_->propagate(psi, {cfg_.pump.starting_at(0.0)}, 0.0, T);
  if (cfg_.path == ScanPath::Background) to_background(psi, T);
  return psi;
}

TdsePoint TdseScanner::branch(double tau, Wavefunction2e psi, bool keep_spectrum) const {
  TdsePoint pt;
  pt.tau = tau;
  try {
    const Pulse probe = cfg_.probe.starting_at(tau);
    const std::vector<Pulse> pulses{cfg_.pump.starting_at(0.0), probe};
    prop_->propagate(psi, pulses, tau, probe.end_time() + cfg_.post_time);
    auto spec = std::make_shared<MomentumSpectrum>(di_spectrum(psi, cfg_.region));
    pt.yield = windowed_yield(*spec, cfg_.window);
    pt.total_di = spec->total();
    if (keep_spectrum) pt.spectrum = std::move(spec);
  } catch (const std::exception& e) {
    pt.ok = false;
    pt.error = e.what();
  }
  return pt;
}

void TdseScanner::run(const std::vector<double>& taus, const Sink& sink, const RunOptions& opts) const {
  if (!std::is_sorted(taus.begin(), taus.end())) throw DomainError("delays must be increasing");
  if (!opts.skip.empty() && opts.skip.size() != taus.size()) throw StructuralError("skip mask size mismatch");
  if (taus.empty()) return;
  if (taus.front() < 0.0) throw DomainError("delays must be non-negative");
  const double Tp = cfg_.pump.total_duration();
  const bool background = cfg_.path == ScanPath::Background;
  if (background && taus.front() < Tp) throw DomainError("background path needs delays >= pump duration");

  const std::vector<Pulse> pump{cfg_.pump.starting_at(0.0)};
  Wavefunction2e trunk = psi0_;
  double t = 0.0;
  bool transformed = false;
  const int workers = std::max(1, cfg_.workers);
  std::deque<std::future<TdsePoint>> inflight;

  auto drain_one = [&] {
    sink(inflight.front().get());
    inflight.pop_front();
  };

  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double tau = taus[i];
    if (background && !transformed) {
      prop_->propagate(trunk, pump, t, Tp);
      t = Tp;
      to_background(trunk, t);
      transformed = true;
    }
    prop_->propagate(trunk, pump, t, tau);
    t = tau;
    if (opts.observer) opts.observer(tau, trunk);
    if (!opts.skip.empty() && opts.skip[i]) continue;
    if (workers == 1) {
      sink(branch(tau, trunk, opts.keep_spectra));
      continue;
    }
    while (static_cast<int>(inflight.size()) >= workers) drain_one();
    inflight.push_back(std::async(std::launch::async, [this, tau, copy = trunk, keep = opts.keep_spectra]() mutable {
      return branch(tau, std::move(copy), keep);
    }));
  }
  while (!inflight.empty()) drain_one();
}

}  // namespace attobeat::tdse
