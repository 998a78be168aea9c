#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attobeat/ecs/eigensolver.hpp"
#include "attobeat/essential_states.hpp"
#include "attobeat/pulse.hpp"
#include "attobeat/tdse/delay_scan.hpp"

namespace attobeat::io {

enum class Mode { Model, Tdse, Ecs, Fit, Compare };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct DelaySpec {
  std::vector<double> taus;  // a.u., strictly increasing
};

struct EcsSpec {
  int n = 201;
  double L = 25.0;
  double R0 = 20.0;
  std::vector<double> thetas{0.25, 0.35};
  std::complex<double> shift{-1.05, -0.002};
  int count = 10;
  ecs::Parity parity = ecs::Parity::Odd;
  int order = 4;
};

struct FitSpec {
  std::string input;          // CSV path; empty: the scan of this run
  std::string column = "yield_windowed";
  int max_components = 4;
};

struct CouplingSpec {
  std::vector<std::complex<double>> strengths;  // empty: all ones
  double sharing_width = 0.5;
  double sequential = 1.0;
  double nonsequential = 0.1;
};

// Validated, unit-converted scenario. All energies and times in a.u.
struct Scenario {
  Mode mode = Mode::Model;
  std::string output = "out";
  int parallel = 0;  // 0: not set in the file
  std::uint64_t seed = 20240601;

  std::optional<Pulse> pump;
  std::optional<Pulse> probe;  // defaults to the pump
  DelaySpec delays;
  bool window_auto = true;
  EnergyWindow window{};

  std::string resonance_table;  // resolved relative to the config file
  CouplingSpec couplings;
  EnergyAxis energy_axis{};

  tdse::SoftCoreModel model{};
  tdse::TdseScanConfig tdse{};  // pulses and window are filled at run time
  EcsSpec ecs{};
  FitSpec fit{};
  std::vector<double> spectra_taus;  // delays (a.u.) at which spectra are exported

  std::string source;  // file name for messages
  std::string base_dir;
  std::string text;    // original document (hashed in the manifest)

  const Pulse& probe_pulse() const { return probe ? *probe : *pump; }
};

// Flat INI-style document: `[section]` headers, `key = value`, '#' or ';'
// comments. Unknown sections or keys, duplicates, missing required keys and
// unit errors raise ConfigError with the line and key.
Scenario parse_scenario(const std::string& text, const std::string& source = "<config>",
                        const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

// Delays start:stop:step with the stop included when it lands on the grid.
std::vector<double> delay_grid(double start, double stop, double step);

}  // namespace attobeat::io
