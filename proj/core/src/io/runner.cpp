#include "attobeat/io/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <map>
#include <set>

#include "attobeat/analysis/beat_fit.hpp"
#include "attobeat/analysis/correlate.hpp"
#include "attobeat/analysis/couplings.hpp"
#include "attobeat/ecs/hamiltonian.hpp"
#include "attobeat/errors.hpp"
#include "attobeat/io/csv.hpp"
#include "attobeat/tdse/ground_state.hpp"
#include "attobeat/tdse/ion.hpp"
#include "attobeat/units.hpp"

namespace attobeat::io {

namespace fs = std::filesystem;

namespace {

struct Context {
  const Scenario& s;
  const RunnerOptions& opts;
  int workers = 1;
  fs::path dir;
  RunResult result;

  void log(const std::string& msg) const {
    if (opts.log) opts.log(msg);
  }
  void warn(const std::string& msg) {
    result.manifest.warnings.push_back(msg);
    log("warning: " + msg);
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  void add_file(const std::string& name) {
    if (std::find(result.files.begin(), result.files.end(), name) == result.files.end())
      result.files.push_back(name);
  }
};

// Delays of a previous run that finished successfully, in attoseconds rounded
// to 1e-6 so that values survive the CSV round trip.
std::map<long long, ScanRecord> previous_points(const Context& c) {
  std::map<long long, ScanRecord> done;
  if (!c.opts.resume || !fs::exists(c.path("scan.csv"))) return done;
  for (const auto& r : read_scan_csv(c.path("scan.csv")).records)
    if (r.ok) done[std::llround(units::au_to_as(r.tau) * 1e6)] = r;
  return done;
}

long long tau_key(double tau) { return std::llround(units::au_to_as(tau) * 1e6); }

bool wants_spectrum(const Scenario& s, double tau) {
  for (double t : s.spectra_taus)
    if (std::abs(units::au_to_as(t) - units::au_to_as(tau)) < 0.5) return true;
  return false;
}

ResonanceTable load_table(const Scenario& s) {
  try {
    return load_resonance_table(s.resonance_table);
  } catch (const IoError& e) {
    throw ConfigError(e.what(), 0, "resonances.table");
  }
}

Couplings make_couplings(const Scenario& s, const ResonanceTable& t) {
  Couplings c;
  const std::size_t n = t.set.size();
  if (s.couplings.strengths.empty()) {
    c.excitation.assign(n, 1.0);
  } else if (s.couplings.strengths.size() == n) {
    c.excitation = s.couplings.strengths;
  } else {
    throw ConfigError("expected one strength per resonance (" + std::to_string(n) + ")", 0, "couplings.strengths");
  }
  c.sharing_width = s.couplings.sharing_width;
  c.gamma_sequential = s.couplings.sequential;
  c.gamma_nonsequential = s.couplings.nonsequential;
  c.I1 = t.first_threshold();
  c.I2 = t.second_threshold();
  return c;
}

EnergyWindow resolve_window(const Scenario& s, double I1, double I2) {
  if (!s.window_auto) return s.window;
  try {
    return default_window(s.pump->central_energy(), I1, I2);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("window auto: ") + e.what(), 0, "window.range");
  }
}

// Rewrites scan.csv in delay order once all points are in.
void finalize_scan(Context& c, std::vector<ScanRecord> records, const std::string& name) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.tau < b.tau; });
  DelayScan scan;
  scan.records = std::move(records);
  write_scan_csv(c.path(name), scan);
  c.add_file(name);
  if (name == "scan.csv") c.result.scan = std::move(scan);
}

void run_model(Context& c) {
  const Scenario& s = c.s;
  const ResonanceTable table = load_table(s);
  if (!table.ion_energy) throw ConfigError("model mode needs an `ion` row for the thresholds", 0, "resonances.table");
  if (table.set.empty()) throw ConfigError("no resonances in the table", 0, "resonances.table");
  const Couplings cp = make_couplings(s, table);
  const EnergyWindow window = resolve_window(s, cp.I1, cp.I2);
  c.log("window [" + format_number(units::au_to_eV(window.lo)) + ", " + format_number(units::au_to_eV(window.hi)) +
        "] eV");

  auto syn = synthesize_amplitudes(table.set, *s.pump, s.probe_pulse(), cp, s.energy_axis);
  for (const auto& w : syn.warnings) c.warn(w);
  const WindowOverlaps ov = window_overlaps(syn.amps, table.set, window);

  const auto done = previous_points(c);
  std::vector<ScanRecord> records;
  ScanCsvWriter writer(c.path("scan.csv"));
  for (const auto& [k, r] : done) writer.append(r), records.push_back(r);
  std::vector<double> todo;
  for (double t : s.delays.taus)
    if (!done.count(tau_key(t))) todo.push_back(t);

  std::function<ScanRecord(std::size_t)> fn = [&](std::size_t i) {
    return scan_model(ov, {todo[i]}).records.front();
  };
  std::function<void(std::size_t, ScanRecord&)> sink = [&](std::size_t, ScanRecord& r) {
    writer.append(r);
    records.push_back(r);
  };
  ordered_parallel_map<ScanRecord>(todo.size(), c.workers, fn, sink);
  finalize_scan(c, std::move(records), "scan.csv");

  for (double t : s.spectra_taus) {
    Eigen::MatrixXd P = probability_map(syn.amps, table.set, t) + syn.amps.gamma.cwiseAbs2();
    const std::string name = spectrum_file_name(t);
    write_spectrum_csv(c.path(name), syn.amps.e1, syn.amps.e2, P);
    c.add_file(name);
  }
}

struct TdseOutcome {
  std::vector<ScanRecord> records;
  std::size_t failed = 0;
};

TdseOutcome run_tdse_scan(Context& c, const std::string& csv_name) {
  const Scenario& s = c.s;
  tdse::TdseScanConfig cfg = s.tdse;
  cfg.model = s.model;
  cfg.pump = *s.pump;
  cfg.probe = s.probe_pulse();
  cfg.workers = c.workers;
  if (!s.window_auto) cfg.window = s.window;
  c.log("tdse: ground state and filter on " + std::to_string(cfg.grid.n) + "^2 grid");
  tdse::TdseScanner scanner(cfg);
  const auto th = scanner.thresholds();
  c.log("tdse: E0 = " + format_number(scanner.ground_energy()) + ", I1 = " + format_number(th.I1) +
        ", I2 = " + format_number(th.I2));
  if (s.window_auto) scanner.set_window(resolve_window(s, th.I1, th.I2));

  const auto done = csv_name == "scan.csv" ? previous_points(c) : std::map<long long, ScanRecord>{};
  TdseOutcome out;
  ScanCsvWriter writer(c.path(csv_name));
  for (const auto& [k, r] : done) writer.append(r), out.records.push_back(r);

  tdse::TdseScanner::RunOptions ro;
  ro.keep_spectra = !s.spectra_taus.empty();
  ro.skip.assign(s.delays.taus.size(), 0);
  for (std::size_t i = 0; i < s.delays.taus.size(); ++i) ro.skip[i] = done.count(tau_key(s.delays.taus[i])) ? 1 : 0;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  scanner.run(
      s.delays.taus,
      [&](const tdse::TdsePoint& p) {
        ScanRecord r{p.tau, nan, nan, nan, p.yield, p.ok};
        if (!p.ok) {
          ++out.failed;
          c.warn("delay " + format_number(units::au_to_as(p.tau)) + " as failed: " + p.error);
        }
        writer.append(r);
        out.records.push_back(r);
        if (p.ok && p.spectrum && wants_spectrum(s, p.tau)) {
          const std::string name = spectrum_file_name(p.tau);
          write_spectrum_csv(c.path(name), s.energy_axis, s.energy_axis, tdse::energy_map(*p.spectrum, s.energy_axis));
          c.add_file(name);
        }
        c.log("tau " + format_number(units::au_to_as(p.tau)) + " as: yield " + format_number(p.yield));
      },
      ro);
  finalize_scan(c, out.records, csv_name);
  return out;
}

void run_tdse(Context& c) {
  const auto out = run_tdse_scan(c, "scan.csv");
  c.result.manifest.failed_points = out.failed;
}

void write_ecs_outputs(Context& c, const EcsRun& run) {
  std::ofstream tab(c.path("resonances.txt"), std::ios::binary | std::ios::trunc);
  if (!tab) throw IoError("cannot write " + c.path("resonances.txt"));
  write_resonance_table(tab, run.table);
  tab.close();
  c.add_file("resonances.txt");

  std::string csv = "re_E_au,im_E_au,displacement,tag\n";
  for (const auto& e : run.classification.eigenvalues)
    csv += format_number(e.E.real()) + "," + format_number(e.E.imag()) + "," + format_number(e.displacement) + "," +
           ecs::to_string(e.tag) + "\n";
  write_text(c.path("eigenvalues.csv"), csv);
  c.add_file("eigenvalues.csv");
  for (const auto& w : run.classification.warnings) c.warn(w);
}

void run_ecs(Context& c) {
  c.log("ecs: eigensolves at " + std::to_string(c.s.ecs.thetas.size()) + " angles");
  const EcsRun run = find_resonances(c.s.model, c.s.ecs, c.workers);
  write_ecs_outputs(c, run);
  if (run.table.set.empty()) c.warn("no resonance identified near the shift");
}

analysis::BeatFit fit_series(Context& c, const std::vector<double>& tau, const std::vector<double>& y) {
  std::vector<double> t2, y2;
  for (std::size_t i = 0; i < tau.size(); ++i)
    if (std::isfinite(tau[i]) && std::isfinite(y[i])) t2.push_back(tau[i]), y2.push_back(y[i]);
  analysis::BeatFitOptions o;
  o.max_components = c.s.fit.max_components;
  o.seed = c.s.seed;
  return analysis::fit_damped_cosines(t2, y2, o);
}

void run_fit(Context& c) {
  CsvTable t;
  std::vector<double> tau, y;
  try {
    t = read_csv(c.s.fit.input);
    tau = t.column("tau_as");
    y = t.column(c.s.fit.column);
  } catch (const IoError& e) {
    throw ConfigError(e.what(), 0, "fit.input");
  }
  for (auto& v : tau) v = units::as_to_au(v);
  const auto fit = fit_series(c, tau, y);
  write_text(c.path("beatfit.json"), to_json(fit));
  c.add_file("beatfit.json");
  c.result.manifest.points = tau.size();
}

void run_compare(Context& c) {
  const Scenario& s = c.s;
  ResonanceSet res;
  if (!s.resonance_table.empty()) {
    res = load_table(s).set;
  } else {
    c.log("compare: resonances from ECS");
    const EcsRun run = find_resonances(s.model, s.ecs, c.workers);
    write_ecs_outputs(c, run);
    res = run.table.set;
  }
  if (res.empty()) throw ConfigError("no resonances available for the model curve", 0, "resonances.table");

  const auto out = run_tdse_scan(c, "scan.csv");
  c.result.manifest.failed_points = out.failed;
  std::vector<double> tau, y;
  for (const auto& r : c.result.scan.records)
    if (r.ok) tau.push_back(r.tau), y.push_back(r.yield);
  std::vector<std::complex<double>> exc;
  for (std::size_t m = 0; m < res.size(); ++m) exc.push_back(res.excitation(m));

  const WindowOverlaps ov = analysis::fit_window_couplings(tau, y, exc);
  std::vector<ScanRecord> model;
  std::vector<double> ym;
  for (const auto& r : scan_model(ov, tau).records) model.push_back(r), ym.push_back(r.yield);
  finalize_scan(c, model, "model.csv");
  // restore the TDSE scan as the primary record
  c.result.scan = read_scan_csv(c.path("scan.csv"));

  const auto rep = analysis::correlate(y, ym);
  write_text(c.path("correlation.json"), to_json(rep));
  c.add_file("correlation.json");
  try {
    const auto fit = fit_series(c, tau, y);
    write_text(c.path("beatfit.json"), to_json(fit));
    c.add_file("beatfit.json");
  } catch (const DomainError& e) {
    c.warn(std::string("beat fit skipped: ") + e.what());
  }
}

}  // namespace

int default_parallelism() {
  if (const char* e = std::getenv("ATTOBEAT_PARALLEL"); e && *e) {
    char* end = nullptr;
    const long v = std::strtol(e, &end, 10);
    if (end && *end == '\0' && v > 0 && v < 4096) return static_cast<int>(v);
  }
  return 1;
}

EcsRun find_resonances(const tdse::SoftCoreModel& model, const EcsSpec& spec, int workers) {
  const tdse::Grid2e grid{spec.n, spec.L};
  grid.validate();

  // ground state on the same discretization: refine the spectral estimate
  const double guess = tdse::ground_state(grid, model).energy;
  ecs::ScalingContour ref{spec.R0, spec.thetas.front()};
  ref.validate(spec.L);
  const auto Href = ecs::build_ecs_hamiltonian(grid, model, ref, spec.order);
  ecs::EigenOptions go;
  go.parity = ecs::Parity::Even;
  const double E0 = ecs::eigenpairs_near(Href, guess, 1, go).front().E.real();
  const double Eion = tdse::ion_spectrum(grid, model).ground_energy();

  EcsRun run;
  run.trajectory.thetas = spec.thetas;
  run.trajectory.pairs.resize(spec.thetas.size());
  auto solve = [&](std::size_t k) {
    ecs::ScalingContour sc{spec.R0, spec.thetas[k]};
    sc.validate(spec.L);
    const auto H = ecs::build_ecs_hamiltonian(grid, model, sc, spec.order);
    ecs::EigenOptions o;
    o.parity = spec.parity;
    return ecs::eigenpairs_near(H, spec.shift, spec.count, o);
  };
  std::function<std::vector<ecs::ComplexEigenpair>(std::size_t)> fn = solve;
  std::function<void(std::size_t, std::vector<ecs::ComplexEigenpair>&)> sink =
      [&](std::size_t k, std::vector<ecs::ComplexEigenpair>& p) { run.trajectory.pairs[k] = std::move(p); };
  ordered_parallel_map<std::vector<ecs::ComplexEigenpair>>(spec.thetas.size(), workers, fn, sink);

  run.classification = ecs::classify_and_export(run.trajectory, E0);
  run.table.set = run.classification.resonances;
  run.table.ion_energy = Eion;
  return run;
}

RunResult run_scenario(const Scenario& s, const RunnerOptions& opts) {
  Context c{s, opts, 1, {}, {}};
  c.workers = opts.parallel > 0 ? opts.parallel : (s.parallel > 0 ? s.parallel : default_parallelism());
  c.dir = opts.out_dir.empty() ? fs::path(s.output) : fs::path(opts.out_dir);
  std::error_code ec;
  fs::create_directories(c.dir, ec);
  if (ec || !fs::is_directory(c.dir)) throw IoError("cannot create output directory " + c.dir.string());
  c.result.out_dir = c.dir.string();

  auto& m = c.result.manifest;
  m.version = library_version();
  m.mode = to_string(s.mode);
  m.config_sha256 = sha256_hex(s.text);
  m.seed = s.seed;
  m.started = timestamp_now();

  const bool scans = s.mode == Mode::Model || s.mode == Mode::Tdse || s.mode == Mode::Compare;
  if (scans && s.delays.taus.empty()) c.warn("empty delay list: nothing to scan");

  switch (s.mode) {
    case Mode::Model: run_model(c); break;
    case Mode::Tdse: run_tdse(c); break;
    case Mode::Ecs: run_ecs(c); break;
    case Mode::Fit: run_fit(c); break;
    case Mode::Compare: run_compare(c); break;
  }
  if (scans) m.points = c.result.scan.records.size();

  m.finished = timestamp_now();
  std::vector<std::string> files = c.result.files;
  std::sort(files.begin(), files.end());
  write_manifest(c.dir.string(), m, files);
  c.result.manifest = read_manifest(c.path("manifest.json"));
  c.result.files = files;
  c.result.code = m.failed_points > 0 ? ExitCode::Partial : ExitCode::Ok;
  return std::move(c.result);
}

}  // namespace attobeat::io
