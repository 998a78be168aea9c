#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "attobeat/analysis/beat_fit.hpp"
#include "attobeat/essential_states.hpp"
#include "attobeat/tdse/ground_state.hpp"
#include "attobeat/tdse/propagator.hpp"

using namespace attobeat;

namespace {

void BM_SplitOperatorStep(benchmark::State& state) {
  const tdse::Grid2e g{static_cast<int>(state.range(0)), 50.0};
  const tdse::SplitOperator prop(g, tdse::SoftCoreModel{}, {0.05});
  tdse::Wavefunction2e psi(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) psi(i, j) = std::exp(-0.1 * (g.x(i) * g.x(i) + g.x(j) * g.x(j)));
  psi.normalize();
  for (auto _ : state) {
    prop.step(psi, 1e-3);
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_SplitOperatorStep)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

struct ModelFixture {
  PathAmplitudes amps;
  ResonanceSet res;
  EnergyWindow window;

  explicit ModelFixture(int bins) {
    const double E0 = -2.903724;
    res = ResonanceSet(E0, {{"a", {E0 + 2.17, -5e-4}}, {"b", {E0 + 2.25, -2e-4}}});
    const Pulse p(41.34, 2.2109, 1e12);
    Couplings c;
    c.excitation = {1.0, 0.7};
    c.I1 = 0.903724;
    c.I2 = 2.0;
    amps = synthesize_amplitudes(res, p, p, c, EnergyAxis{0.0, 3.0, bins}).amps;
    window = default_window(2.2109, c.I1, c.I2);
  }
};

void BM_WindowOverlaps(benchmark::State& state) {
  const ModelFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(window_overlaps(f.amps, f.res, f.window));
}
BENCHMARK(BM_WindowOverlaps)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_ModelScan(benchmark::State& state) {
  const ModelFixture f(256);
  const auto ov = window_overlaps(f.amps, f.res, f.window);
  std::vector<double> taus;
  for (int i = 0; i < state.range(0); ++i) taus.push_back(40.0 + 0.5 * i);
  for (auto _ : state) benchmark::DoNotOptimize(scan_model(ov, taus));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ModelScan)->Arg(1000)->Arg(10000);

void BM_BeatFit(benchmark::State& state) {
  std::vector<double> t, y;
  for (int i = 0; i < 400; ++i) {
    t.push_back(0.5 * i);
    y.push_back(1.0 + std::exp(-0.002 * t.back()) * std::cos(2.17 * t.back()) +
                0.5 * std::cos(2.25 * t.back() + 0.4));
  }
  analysis::BeatFitOptions o;
  o.max_components = 2;
  for (auto _ : state) benchmark::DoNotOptimize(analysis::fit_damped_cosines(t, y, o));
}
BENCHMARK(BM_BeatFit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
