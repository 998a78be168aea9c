#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "attobeat/essential_states.hpp"
#include "attobeat/pulse.hpp"
#include "attobeat/tdse/ground_state.hpp"
#include "attobeat/tdse/ion.hpp"
#include "attobeat/tdse/propagator.hpp"
#include "attobeat/tdse/spectrum.hpp"

namespace attobeat::tdse {

enum class ScanPath {
  PumpProbe,   // full three-path signal
  Background,  // excited population removed after the pump: alpha + gamma only
};

struct TdseScanConfig {
  Grid2e grid{};
  SoftCoreModel model{};
  double dt = 0.05;
  // Start times are ignored: the pump starts at t = 0 and the probe at t = tau,
  // which is the peak-to-peak delay for identical pulses.
  Pulse pump{41.34, 2.2, 1e12};
  Pulse probe{41.34, 2.2, 1e12};
  Absorber absorber{};
  DIRegionSpec region{};
  double post_time = 25.0;
  EnergyWindow window{0.35, 0.8};
  double filter_time = 60.0;
  int filter_passes = 2;
  ScanPath path = ScanPath::PumpProbe;
  int workers = 1;
  GroundStateOptions ground{};
};

struct TdsePoint {
  double tau = 0.0;
  double yield = 0.0;     // windowed yield
  double total_di = 0.0;  // full DI probability in the region
  bool ok = true;
  std::string error;
  std::shared_ptr<const MomentumSpectrum> spectrum;  // set when requested
};

// Pump once along a trunk, branch a probe run at every delay. Branches run on
// up to `workers` threads; results reach the sink in delay order.
class TdseScanner {
 public:
  explicit TdseScanner(TdseScanConfig cfg);

  const TdseScanConfig& config() const { return cfg_; }
  double ground_energy() const { return E0_; }
  // Initial state after the stationary filter and its propagator energy.
  const Wavefunction2e& initial_state() const { return psi0_; }
  double propagator_energy() const { return E0_prop_; }
  const IonSpectrum& ion() const { return ion_; }
  Thresholds thresholds() const { return single_ion_threshold(E0_, ion_.ground_energy()); }
  const SplitOperator& propagator() const { return *prop_; }
  // The window may depend on thresholds known only after construction.
  void set_window(const EnergyWindow& w) {
    w.validate();
    cfg_.window = w;
  }

  using Sink = std::function<void(const TdsePoint&)>;
  // Called on the trunk at each delay before the probe branch is started.
  using TrunkObserver = std::function<void(double tau, const Wavefunction2e& trunk)>;

  struct RunOptions {
    bool keep_spectra = false;
    std::vector<char> skip;  // per delay; skipped points are not computed or emitted
    TrunkObserver observer;
  };

  void run(const std::vector<double>& taus, const Sink& sink, const RunOptions& opts) const;
  void run(const std::vector<double>& taus, const Sink& sink) const { run(taus, sink, RunOptions{}); }

  // Trunk state right after the pump with the Background transformation
  // applied when cfg.path says so. Exposed for diagnostics.
  Wavefunction2e after_pump() const;

 private:
  TdsePoint branch(double tau, Wavefunction2e psi, bool keep_spectrum) const;
  void to_background(Wavefunction2e& psi, double t) const;

  TdseScanConfig cfg_;
  std::unique_ptr<SplitOperator> prop_;
  Wavefunction2e psi0_;
  double E0_ = 0.0;
  double E0_prop_ = 0.0;
  IonSpectrum ion_;
};

}  // namespace attobeat::tdse
