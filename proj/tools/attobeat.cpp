#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "attobeat/errors.hpp"
#include "attobeat/io/manifest.hpp"
#include "attobeat/io/runner.hpp"
#include "attobeat/io/scenario.hpp"

namespace {

using attobeat::io::ExitCode;
using attobeat::io::Mode;

struct Args {
  std::string config;
  std::string out;
  int parallel = 0;
  bool resume = false;
  bool quiet = false;
};

int code(ExitCode c) { return static_cast<int>(c); }

int run(const Args& a, std::optional<Mode> forced) {
  attobeat::io::Scenario s;
  try {
    s = attobeat::io::load_scenario(a.config);
  } catch (const attobeat::ConfigError& e) {
    std::fprintf(stderr, "%s: %s\n", a.config.c_str(), e.what());
    return code(ExitCode::Config);
  }
  if (forced && s.mode != *forced) {
    std::fprintf(stderr, "%s: run.mode is '%s' but this command runs '%s'\n", a.config.c_str(),
                 attobeat::io::to_string(s.mode).c_str(), attobeat::io::to_string(*forced).c_str());
    return code(ExitCode::Config);
  }
  attobeat::io::RunnerOptions ro;
  ro.out_dir = a.out;
  ro.parallel = a.parallel;
  ro.resume = a.resume;
  if (!a.quiet) ro.log = [](const std::string& m) { std::fprintf(stderr, "%s\n", m.c_str()); };
  try {
    const auto r = attobeat::io::run_scenario(s, ro);
    if (!a.quiet)
      std::fprintf(stderr, "wrote %zu files to %s\n", r.files.size() + 1, r.out_dir.c_str());
    return code(r.code);
  } catch (const attobeat::ConfigError& e) {
    std::fprintf(stderr, "%s: %s\n", a.config.c_str(), e.what());
    return code(ExitCode::Config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return code(ExitCode::Engine);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attosecond pump-probe interferometry: essential-states model, 1D TDSE, ECS resonances"};
  app.set_version_flag("--version", attobeat::io::library_version());
  app.require_subcommand(1);

  Args args;
  std::optional<Mode> forced;
  struct Cmd {
    const char* name;
    const char* help;
    std::optional<Mode> mode;
  };
  const Cmd cmds[] = {
      {"simulate-model", "delay scan with the essential-states model", Mode::Model},
      {"simulate-tdse", "delay scan with the two-electron TDSE", Mode::Tdse},
      {"find-resonances", "ECS eigenvalues and resonance table", Mode::Ecs},
      {"scan-delay", "run the scenario with the engine named by run.mode", std::nullopt},
      {"fit-beats", "fit damped cosines to a scan column", Mode::Fit},
      {"compare", "TDSE scan against the fitted model curve", Mode::Compare},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config,-c", args.config, "scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out,-o", args.out, "output directory (overrides run.output)");
    sub->add_option("--parallel,-j", args.parallel, "worker threads (default: ATTOBEAT_PARALLEL or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--resume", args.resume, "skip delays already present in scan.csv");
    sub->add_flag("--quiet,-q", args.quiet, "no progress output");
    sub->callback([&forced, m = c.mode] { forced = m; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::Config);
  }
  return run(args, forced);
}
