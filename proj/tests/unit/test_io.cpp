#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "attobeat/analysis/envelope.hpp"
#include "attobeat/errors.hpp"
#include "attobeat/io/csv.hpp"
#include "attobeat/io/manifest.hpp"
#include "attobeat/io/quantity.hpp"
#include "attobeat/io/runner.hpp"
#include "attobeat/io/scenario.hpp"
#include "attobeat/units.hpp"

using namespace attobeat;
using namespace attobeat::io;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("attobeat_io_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& f) const { return (path / f).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void put(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

const std::string kSingleTable = "ground -2.9 0\nion -2.0 0\nr1 -0.6891 1e-3\n";

std::string model_config(const std::string& delays) {
  return "[run]\nmode = model\n[pump]\nenergy = 2.2109 au\nduration = 41.34 au\n"
         "[delays]\n" + delays + "\n[window]\nrange = auto\n[resonances]\ntable = table.txt\n"
         "[grid]\nbins = 64\nemin = 0 au\nemax = 2.5 au\n";
}

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_key(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("quantities") {
  const auto q = parse_quantity("20 nm");
  CHECK(q.value == 20.0);
  CHECK(q.unit == "nm");
  CHECK(energy_au(q) == doctest::Approx(units::eV_to_au(61.9921)).epsilon(1e-5));
  CHECK(time_au(parse_quantity("1500 as")) == doctest::Approx(1500.0 / units::kUnits.autime_as));
  CHECK(time_au(parse_quantity("1 fs")) == doctest::Approx(units::fs_to_au(1.0)));
  CHECK(energy_au(parse_quantity("27.211386 eV")) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(intensity_Wcm2(parse_quantity("1e12 W/cm2")) == 1e12);
  CHECK(length_au(parse_quantity("0.3")) == 0.3);
  const auto l = parse_quantity_list("[1, 2.5, 3e1] as");
  REQUIRE(l.size() == 3);
  CHECK(l[2].value == 30.0);
  CHECK(l[1].unit == "as");
  CHECK(parse_quantity_list("[]").empty());
  CHECK_THROWS_AS(parse_quantity("abc"), std::invalid_argument);
  CHECK_THROWS_AS(energy_au(parse_quantity("1 parsec")), std::invalid_argument);
  CHECK_THROWS_AS(time_au(parse_quantity("3 eV")), std::invalid_argument);
}

TEST_CASE("delay grid and scenario delays") {
  CHECK(delay_grid(1000, 3000, 10).size() == 201);
  CHECK(delay_grid(0, 1, 0.3).size() == 4);
  TempDir d("delays");
  put(d.file("table.txt"), kSingleTable);
  const auto s = parse_scenario(model_config("start = 1000 as\nstop = 3000 as\nstep = 10 as"), "x", d.path.string());
  REQUIRE(s.delays.taus.size() == 201);
  CHECK(units::au_to_as(s.delays.taus.back()) == doctest::Approx(3000.0));
  CHECK(s.resonance_table == d.file("table.txt"));
  CHECK(s.probe_pulse().central_energy() == s.pump->central_energy());
  CHECK(s.pump->peak_intensity() == 1e12);
}

TEST_CASE("scenario errors name line and key") {
  const std::string base = "[run]\nmode = model\n";
  CHECK(error_line(base + "mode = tdse\n") == 3);
  CHECK(error_key(base + "mode = tdse\n") == "run.mode");
  CHECK(error_line(base + "colour = red\n") == 3);
  CHECK(error_key(base + "colour = red\n") == "run.colour");
  CHECK(error_line(base + "[nonsense]\n") == 3);
  CHECK(error_line("mode = model\n") == 1);
  CHECK(error_line(base + "[pump]\nwavelength = 20 parsec\n") == 4);
  CHECK(error_key(base + "[pump]\nwavelength = 20 parsec\n") == "pump.wavelength");
  const std::string pump = base + "[pump]\nwavelength = 20 nm\nduration = 1 fs\n";
  CHECK(error_line(pump + "[delays]\nstart = 5 as\nstop = 1 as\nstep = 1 as\n") == 9);
  CHECK(error_line(pump + "[delays]\nlist = [3, 2] as\n") == 7);
  CHECK(error_key(pump + "[delays]\nlist = [3, 2] as\n") == "delays.list");
  CHECK(error_key(pump) == "delays");
  CHECK_THROWS_AS(parse_scenario(base + "[pump]\nwavelength = 20 nm\n[delays]\nlist = [1] as\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[run]\nmode = sing\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[run]\nmode = fit\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("[run]\nmode = model\n[run]\n"), ConfigError);
}

TEST_CASE("auto window from the bundled helium table") {
  const std::string dir = std::string(ATTOBEAT_SOURCE_DIR) + "/examples_scenarios";
  auto s = load_scenario(dir + "/helium_model.ini");
  CHECK(s.window_auto);
  const auto t = load_resonance_table(s.resonance_table);
  // nonrelativistic infinite-mass values, a few meV off the measured ones
  CHECK(units::au_to_eV(t.first_threshold()) == doctest::Approx(24.587).epsilon(5e-4));
  CHECK(units::au_to_eV(t.second_threshold()) == doctest::Approx(54.418).epsilon(5e-4));
  CHECK(t.second_threshold() == doctest::Approx(2.0 * 2.0 / 2.0));
  const auto w = default_window(s.pump->central_energy(), t.first_threshold(), t.second_threshold());
  CHECK(units::au_to_eV(w.lo) == doctest::Approx(7.57).epsilon(1e-3));
  CHECK(units::au_to_eV(w.hi) == doctest::Approx(37.40).epsilon(1e-3));
}

TEST_CASE("scan CSV round trip") {
  TempDir d("csv");
  DelayScan scan;
  scan.records.push_back({10.0, 1.0, 2.0, 3.0, 4.0, true});
  scan.records.push_back({20.0, 1e-300, 0.125, 3.0, 1.0 / 3.0, true});
  scan.records.push_back({30.0, 0, 0, 0, 0, false});
  write_scan_csv(d.file("s.csv"), scan);
  const auto text = slurp(d.file("s.csv"));
  CHECK(text.rfind("tau_as,A_M,P_beta,P_bg,yield_windowed\n", 0) == 0);
  CHECK(text.find("nan") != std::string::npos);
  const auto back = read_scan_csv(d.file("s.csv"));
  REQUIRE(back.records.size() == 3);
  CHECK(back.records[0].tau == doctest::Approx(10.0).epsilon(1e-11));
  CHECK(back.records[1].yield == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(back.records[1].A_M == doctest::Approx(1e-300).epsilon(1e-11));
  CHECK_FALSE(back.records[2].ok);
  CHECK(format_number(0.1) == "1.00000000000e-01");
  CHECK(spectrum_file_name(units::as_to_au(1500.0)) == "spectrum_tau1500.csv");
  CHECK_THROWS_AS(read_scan_csv(d.file("missing.csv")), IoError);
  CHECK_THROWS_AS(read_csv(d.file("s.csv")).column("nope"), IoError);
}

TEST_CASE("manifest round trip and checksums") {
  TempDir d("manifest");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  put(d.file("a.txt"), "hello\n");
  RunManifest m;
  m.version = library_version();
  m.mode = "model";
  m.config_sha256 = sha256_hex("cfg");
  m.seed = 7;
  m.points = 3;
  m.warnings = {"w"};
  write_manifest(d.path.string(), m, {"a.txt"});
  const auto r = read_manifest(d.file("manifest.json"));
  REQUIRE(r.outputs.size() == 1);
  CHECK(r.outputs[0].file == "a.txt");
  CHECK(r.outputs[0].sha256 == sha256_file(d.file("a.txt")));
  CHECK(r.seed == 7);
  CHECK(r.warnings == std::vector<std::string>{"w"});
  CHECK(to_json(parse_manifest(to_json(r))) == to_json(r));
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  CHECK(timestamp_now() == "1970-01-01T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("model runs") {
  TempDir d("run");
  put(d.file("table.txt"), kSingleTable);
  RunnerOptions o;
  o.out_dir = d.file("out");
  std::vector<std::string> log;
  o.log = [&](const std::string& s) { log.push_back(s); };

  SUBCASE("single resonance: A_M decays as exp(-Gamma tau / 2)") {
    const auto s = parse_scenario(model_config("start = 0 as\nstop = 20000 as\nstep = 500 as"), "x", d.path.string());
    const auto r = run_scenario(s, o);
    CHECK(r.code == ExitCode::Ok);
    const auto csv = read_scan_csv(d.file("out/scan.csv"));
    REQUIRE(csv.records.size() == 41);
    const auto fit = analysis::log_linear_fit(csv.taus(), csv.column(&ScanRecord::A_M));
    CHECK(fit.slope == doctest::Approx(-0.5e-3).epsilon(1e-6));
    const auto man = read_manifest(d.file("out/manifest.json"));
    CHECK(man.points == 41);
    CHECK(man.config_sha256 == sha256_hex(s.text));
    for (const auto& e : man.outputs) CHECK(e.sha256 == sha256_file(d.file("out/" + e.file)));
  }
  SUBCASE("empty delay list: success with a warning") {
    const auto s = parse_scenario(model_config("list = []"), "x", d.path.string());
    const auto r = run_scenario(s, o);
    CHECK(r.code == ExitCode::Ok);
    CHECK(r.scan.records.empty());
    CHECK_FALSE(r.manifest.warnings.empty());
    CHECK(read_scan_csv(d.file("out/scan.csv")).records.empty());
  }
  SUBCASE("spectrum rows, determinism and parallel invariance") {
    auto text = model_config("start = 0 as\nstop = 2000 as\nstep = 20 as");
    text += "[spectra]\ntaus = [1000] as\n";
    const auto s = parse_scenario(text, "x", d.path.string());
    ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    o.parallel = 1;
    run_scenario(s, o);
    const auto spec = slurp(d.file("out/spectrum_tau1000.csv"));
    CHECK(std::count(spec.begin(), spec.end(), '\n') == 1 + 64 * 64);
    const auto a = slurp(d.file("out/scan.csv")), am = slurp(d.file("out/manifest.json"));
    o.out_dir = d.file("out8");
    o.parallel = 8;
    run_scenario(s, o);
    ::unsetenv("SOURCE_DATE_EPOCH");
    CHECK(slurp(d.file("out8/scan.csv")) == a);
    CHECK(slurp(d.file("out8/spectrum_tau1000.csv")) == spec);
    CHECK(slurp(d.file("out8/manifest.json")) == am);
  }
  SUBCASE("resume keeps finished points") {
    const auto s = parse_scenario(model_config("start = 0 as\nstop = 1000 as\nstep = 100 as"), "x", d.path.string());
    run_scenario(s, o);
    const auto full = slurp(d.file("out/scan.csv"));
    // drop the last four rows as if the run had been interrupted
    std::string cut = full;
    for (int k = 0; k < 4; ++k) cut.erase(cut.rfind('\n', cut.size() - 2) + 1);
    put(d.file("out/scan.csv"), cut);
    o.resume = true;
    const auto r = run_scenario(s, o);
    CHECK(r.code == ExitCode::Ok);
    CHECK(slurp(d.file("out/scan.csv")) == full);
  }
  SUBCASE("missing table is a config error") {
    auto text = model_config("list = [0] as");
    const auto s = parse_scenario(text, "x", (d.path / "nowhere").string());
    CHECK_THROWS_AS(run_scenario(s, o), ConfigError);
  }
}

TEST_CASE("ordered parallel map") {
  std::vector<std::size_t> seen;
  ordered_parallel_map<std::size_t>(
      100, 4, [](std::size_t i) { return i * i; },
      [&](std::size_t i, std::size_t& v) {
        CHECK(v == i * i);
        seen.push_back(i);
      });
  REQUIRE(seen.size() == 100);
  for (std::size_t i = 0; i < 100; ++i) CHECK(seen[i] == i);
  CHECK_THROWS_AS(ordered_parallel_map<int>(
                      10, 3, [](std::size_t i) -> int { if (i == 5) throw DomainError("x"); return 0; },
                      [](std::size_t, int&) {}),
                  DomainError);
}
