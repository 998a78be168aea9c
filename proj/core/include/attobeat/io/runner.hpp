#pragma once

#include <functional>
#include <string>
#include <vector>

#include "attobeat/ecs/classify.hpp"
#include "attobeat/essential_states.hpp"
#include "attobeat/io/manifest.hpp"
#include "attobeat/io/scenario.hpp"
#include "attobeat/resonance_set.hpp"

namespace attobeat::io {

// Process exit status contract of the command-line tool.
enum class ExitCode : int { Ok = 0, Config = 1, Partial = 2, Engine = 3 };

struct RunnerOptions {
  std::string out_dir;   // empty: scenario output, relative to the working directory
  int parallel = 0;      // 0: scenario value, then default_parallelism()
  bool resume = false;   // keep finished delay points found in scan.csv
  std::function<void(const std::string&)> log;  // progress and warnings
};

struct RunResult {
  ExitCode code = ExitCode::Ok;
  DelayScan scan;
  RunManifest manifest;
  std::vector<std::string> files;  // written outputs, relative to the output directory
  std::string out_dir;
};

// ATTOBEAT_PARALLEL if set to a positive integer, else 1.
int default_parallelism();

// Runs the scenario and writes every output plus manifest.json. Config and
// input problems raise ConfigError; engine setup failures propagate as they
// are. Failed delay points are recorded and give ExitCode::Partial.
RunResult run_scenario(const Scenario& s, const RunnerOptions& opts = {});

// ECS eigensolves at every scaling angle of the spec (angles in parallel),
// classification and export as a table with `ground` and `ion` rows.
struct EcsRun {
  ResonanceTable table;
  ecs::Classification classification;
  ecs::ThetaTrajectory trajectory;
};
EcsRun find_resonances(const tdse::SoftCoreModel& model, const EcsSpec& spec, int workers = 1);

// In-order parallel map: `fn(i)` runs on up to `workers` threads and `sink(i, value)`
// is called on the calling thread in index order.
template <class T>
void ordered_parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn,
                          const std::function<void(std::size_t, T&)>& sink);

}  // namespace attobeat::io

#include "attobeat/io/detail/ordered_map.hpp"
