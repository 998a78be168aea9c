#include "attobeat/io/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "attobeat/errors.hpp"
#include "attobeat/io/quantity.hpp"
#include "attobeat/resonance_set.hpp"

namespace attobeat::io {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"run", {"mode", "output", "parallel", "seed"}},
      {"pump", {"wavelength", "energy", "duration", "intensity", "cep", "envelope"}},
      {"probe", {"wavelength", "energy", "duration", "intensity", "cep", "envelope"}},
      {"delays", {"start", "stop", "step", "list"}},
      {"window", {"range"}},
      {"resonances", {"table"}},
      {"couplings", {"strengths", "sharing_width", "sequential", "nonsequential"}},
      {"grid", {"bins", "emin", "emax"}},
      {"model", {"Z", "a_en", "a_ee", "interacting"}},
      {"tdse", {"N", "L", "dt", "post_time", "absorber_width", "absorber_power", "region_R", "region_width",
                "filter_time", "path"}},
      {"ecs", {"N", "L", "R0", "thetas", "shift_re", "shift_im", "count", "parity", "order"}},
      {"fit", {"input", "column", "max_components"}},
      {"spectra", {"taus"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) return s.substr(1, s.size() - 2);
  return s;
}

class Reader {
 public:
  Reader(std::map<std::string, Section> doc) : doc_(std::move(doc)) {}

  bool has(const std::string& sec) const { return doc_.count(sec) > 0; }
  bool has(const std::string& sec, const std::string& key) const {
    auto it = doc_.find(sec);
    return it != doc_.end() && it->second.count(key) > 0;
  }
  const Entry& entry(const std::string& sec, const std::string& key) const { return doc_.at(sec).at(key); }
  std::string name(const std::string& sec, const std::string& key) const { return sec + "." + key; }

  template <class F>
  auto convert(const std::string& sec, const std::string& key, F&& f) const {
    const Entry& e = entry(sec, key);
    try {
      return f(e.value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ConfigError(ex.what(), e.line, name(sec, key));
    }
  }

  std::string str(const std::string& sec, const std::string& key) const { return unquote(entry(sec, key).value); }
  double number(const std::string& sec, const std::string& key) const {
    return convert(sec, key, [](const std::string& v) {
      const Quantity q = parse_quantity(v);
      if (!q.unit.empty()) throw std::invalid_argument("expected a plain number");
      return q.value;
    });
  }
  long integer(const std::string& sec, const std::string& key) const {
    const double v = number(sec, key);
    if (v != std::floor(v) || std::abs(v) > 1e15)
      throw ConfigError("expected an integer", entry(sec, key).line, name(sec, key));
    return static_cast<long>(v);
  }
  double energy(const std::string& sec, const std::string& key) const {
    return convert(sec, key, [](const std::string& v) { return energy_au(parse_quantity(v)); });
  }
  double time(const std::string& sec, const std::string& key) const {
    return convert(sec, key, [](const std::string& v) { return time_au(parse_quantity(v)); });
  }
  double length(const std::string& sec, const std::string& key) const {
    return convert(sec, key, [](const std::string& v) { return length_au(parse_quantity(v)); });
  }
  [[noreturn]] void fail(const std::string& sec, const std::string& key, const std::string& msg) const {
    throw ConfigError(msg, has(sec, key) ? entry(sec, key).line : 0, name(sec, key));
  }

 private:
  std::map<std::string, Section> doc_;
};

std::map<std::string, Section> tokenize(const std::string& text) {
  std::map<std::string, Section> doc;
  std::istringstream in(text);
  std::string raw, current;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' || line[i] == ';') {
        line.erase(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", lineno);
      current = trim(line.substr(1, line.size() - 2));
      if (!schema().count(current)) throw ConfigError("unknown section [" + current + "]", lineno);
      if (doc.count(current)) throw ConfigError("duplicate section [" + current + "]", lineno);
      doc[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (current.empty()) throw ConfigError("key outside of any section", lineno, key);
    const std::string full = current + "." + key;
    if (!schema().at(current).count(key)) throw ConfigError("unknown key", lineno, full);
    if (doc[current].count(key)) throw ConfigError("duplicate key", lineno, full);
    if (value.empty()) throw ConfigError("empty value", lineno, full);
    doc[current][key] = {value, lineno};
  }
  return doc;
}

Pulse read_pulse(const Reader& r, const std::string& sec, const std::optional<Pulse>& fallback) {
  const bool wl = r.has(sec, "wavelength"), en = r.has(sec, "energy");
  if (wl && en) r.fail(sec, "energy", "give either wavelength or energy, not both");
  double omega = fallback ? fallback->central_energy() : 0.0;
  if (wl) omega = r.energy(sec, "wavelength");
  if (en) omega = r.energy(sec, "energy");
  if (!wl && !en && !fallback) r.fail(sec, "wavelength", "missing central wavelength or energy");
  if (!r.has(sec, "duration") && !fallback) r.fail(sec, "duration", "missing required key");
  const double T = r.has(sec, "duration") ? r.time(sec, "duration") : fallback->total_duration();
  double I0 = fallback ? fallback->peak_intensity() : 1e12;
  if (r.has(sec, "intensity"))
    I0 = r.convert(sec, "intensity", [](const std::string& v) { return intensity_Wcm2(parse_quantity(v)); });
  const double cep = r.has(sec, "cep") ? r.number(sec, "cep") : (fallback ? fallback->cep() : 0.0);
  EnvelopeConvention conv = fallback ? fallback->convention() : EnvelopeConvention::Field;
  if (r.has(sec, "envelope")) {
    const std::string e = r.str(sec, "envelope");
    if (e == "field") conv = EnvelopeConvention::Field;
    else if (e == "intensity") conv = EnvelopeConvention::Intensity;
    else r.fail(sec, "envelope", "expected 'field' or 'intensity'");
  }
  try {
    return Pulse(T, omega, I0, cep, 0.0, conv);
  } catch (const std::exception& e) {
    throw ConfigError(e.what(), 0, sec);
  }
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "model") return Mode::Model;
  if (s == "tdse") return Mode::Tdse;
  if (s == "ecs") return Mode::Ecs;
  if (s == "fit") return Mode::Fit;
  if (s == "compare") return Mode::Compare;
  throw std::invalid_argument("unknown mode '" + s + "' (model, tdse, ecs, fit, compare)");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Model: return "model";
    case Mode::Tdse: return "tdse";
    case Mode::Ecs: return "ecs";
    case Mode::Fit: return "fit";
    case Mode::Compare: return "compare";
  }
  return "model";
}

std::vector<double> delay_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw DomainError("delay step must be positive");
  if (stop < start) throw DomainError("delay stop lies before start");
  const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> t(n);
  for (long i = 0; i < n; ++i) t[i] = start + static_cast<double>(i) * step;
  return t;
}

Scenario parse_scenario(const std::string& text, const std::string& source, const std::string& base_dir) {
  const Reader r(tokenize(text));
  Scenario s;
  s.source = source;
  s.base_dir = base_dir;
  s.text = text;

  if (!r.has("run", "mode")) throw ConfigError("missing required key", 0, "run.mode");
  s.mode = r.convert("run", "mode", [](const std::string& v) { return parse_mode(unquote(v)); });
  if (r.has("run", "output")) s.output = r.str("run", "output");
  if (r.has("run", "parallel")) {
    s.parallel = static_cast<int>(r.integer("run", "parallel"));
    if (s.parallel < 1) r.fail("run", "parallel", "must be at least 1");
  }
  if (r.has("run", "seed")) {
    const long seed = r.integer("run", "seed");
    if (seed < 0) r.fail("run", "seed", "must be non-negative");
    s.seed = static_cast<std::uint64_t>(seed);
  }

  if (r.has("pump")) s.pump = read_pulse(r, "pump", std::nullopt);
  if (r.has("probe")) {
    if (!s.pump) throw ConfigError("[probe] needs a [pump] section", 0, "probe");
    s.probe = read_pulse(r, "probe", s.pump);
  }

  if (r.has("delays")) {
    const bool grid = r.has("delays", "start") || r.has("delays", "stop") || r.has("delays", "step");
    if (grid && r.has("delays", "list")) r.fail("delays", "list", "give either start/stop/step or list");
    if (grid) {
      for (const char* k : {"start", "stop", "step"})
        if (!r.has("delays", k)) r.fail("delays", k, "missing required key");
      const double a = r.time("delays", "start"), b = r.time("delays", "stop"), st = r.time("delays", "step");
      s.delays.taus = r.convert("delays", "step", [&](const std::string&) { return delay_grid(a, b, st); });
    } else if (r.has("delays", "list")) {
      s.delays.taus = r.convert("delays", "list", [](const std::string& v) {
        std::vector<double> out;
        if (unquote(v) == "[]") return out;
        for (const auto& q : parse_quantity_list(v)) out.push_back(time_au(q));
        return out;
      });
      for (std::size_t i = 1; i < s.delays.taus.size(); ++i)
        if (!(s.delays.taus[i] > s.delays.taus[i - 1])) r.fail("delays", "list", "delays must be strictly increasing");
    }
    for (double t : s.delays.taus)
      if (t < 0.0) r.fail("delays", "start", "delays must be non-negative");
  }

  if (r.has("window", "range")) {
    const std::string v = r.str("window", "range");
    if (v == "auto") {
      s.window_auto = true;
    } else {
      const auto q = r.convert("window", "range", [](const std::string& t) { return parse_quantity_list(t); });
      if (q.size() != 2) r.fail("window", "range", "expected 'auto' or '[lo, hi] unit'");
      s.window_auto = false;
      s.window = r.convert("window", "range", [&](const std::string&) {
        EnergyWindow w{energy_au(q[0]), energy_au(q[1])};
        w.validate();
        return w;
      });
    }
  }

  if (r.has("resonances", "table")) {
    std::filesystem::path p(r.str("resonances", "table"));
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    s.resonance_table = p.lexically_normal().string();
  }

  if (r.has("couplings", "strengths")) {
    s.couplings.strengths = r.convert("couplings", "strengths", [](const std::string& v) {
      std::vector<std::complex<double>> out;
      for (const auto& q : parse_quantity_list(v)) {
        if (!q.unit.empty()) throw std::invalid_argument("strengths are plain numbers");
        out.emplace_back(q.value, 0.0);
      }
      return out;
    });
  }
  if (r.has("couplings", "sharing_width")) s.couplings.sharing_width = r.energy("couplings", "sharing_width");
  if (r.has("couplings", "sequential")) s.couplings.sequential = r.number("couplings", "sequential");
  if (r.has("couplings", "nonsequential")) s.couplings.nonsequential = r.number("couplings", "nonsequential");
  if (!(s.couplings.sharing_width > 0.0)) r.fail("couplings", "sharing_width", "must be positive");

  if (r.has("grid", "bins")) s.energy_axis.bins = static_cast<int>(r.integer("grid", "bins"));
  if (r.has("grid", "emin")) s.energy_axis.lo = r.energy("grid", "emin");
  if (r.has("grid", "emax")) s.energy_axis.hi = r.energy("grid", "emax");
  try {
    s.energy_axis.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what(), 0, "grid");
  }

  if (r.has("model", "Z")) s.model.Z = r.number("model", "Z");
  if (r.has("model", "a_en")) s.model.a_en = r.length("model", "a_en");
  if (r.has("model", "a_ee")) s.model.a_ee = r.length("model", "a_ee");
  if (r.has("model", "interacting")) {
    const std::string v = r.str("model", "interacting");
    if (v != "true" && v != "false") r.fail("model", "interacting", "expected true or false");
    s.model.interacting = v == "true";
  }
  try {
    s.model.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what(), 0, "model");
  }

  auto& t = s.tdse;
  t.model = s.model;
  if (r.has("tdse", "N")) t.grid.n = static_cast<int>(r.integer("tdse", "N"));
  if (r.has("tdse", "L")) t.grid.L = r.length("tdse", "L");
  if (r.has("tdse", "dt")) t.dt = r.time("tdse", "dt");
  if (r.has("tdse", "post_time")) t.post_time = r.time("tdse", "post_time");
  if (r.has("tdse", "absorber_width")) t.absorber.width = r.length("tdse", "absorber_width");
  if (r.has("tdse", "absorber_power")) t.absorber.power = r.number("tdse", "absorber_power");
  if (r.has("tdse", "region_R")) t.region.R = r.length("tdse", "region_R");
  if (r.has("tdse", "region_width")) t.region.width = r.length("tdse", "region_width");
  if (r.has("tdse", "filter_time")) t.filter_time = r.time("tdse", "filter_time");
  if (r.has("tdse", "path")) {
    const std::string v = r.str("tdse", "path");
    if (v == "pump-probe") t.path = tdse::ScanPath::PumpProbe;
    else if (v == "background") t.path = tdse::ScanPath::Background;
    else r.fail("tdse", "path", "expected 'pump-probe' or 'background'");
  }
  try {
    t.grid.validate();
    if (!(t.dt > 0.0)) throw DomainError("time step must be positive");
  } catch (const std::exception& e) {
    throw ConfigError(e.what(), 0, "tdse");
  }

  auto& e = s.ecs;
  if (r.has("ecs", "N")) e.n = static_cast<int>(r.integer("ecs", "N"));
  if (r.has("ecs", "L")) e.L = r.length("ecs", "L");
  if (r.has("ecs", "R0")) e.R0 = r.length("ecs", "R0");
  if (r.has("ecs", "thetas")) {
    e.thetas = r.convert("ecs", "thetas", [](const std::string& v) {
      std::vector<double> out;
      for (const auto& q : parse_quantity_list(v)) out.push_back(q.value);
      return out;
    });
    if (e.thetas.size() < 2) r.fail("ecs", "thetas", "need at least two scaling angles");
  }
  if (r.has("ecs", "shift_re")) e.shift.real(r.energy("ecs", "shift_re"));
  if (r.has("ecs", "shift_im")) e.shift.imag(r.energy("ecs", "shift_im"));
  if (r.has("ecs", "count")) e.count = static_cast<int>(r.integer("ecs", "count"));
  if (r.has("ecs", "order")) e.order = static_cast<int>(r.integer("ecs", "order"));
  if (r.has("ecs", "parity")) {
    const std::string v = r.str("ecs", "parity");
    if (v == "even") e.parity = ecs::Parity::Even;
    else if (v == "odd") e.parity = ecs::Parity::Odd;
    else if (v == "any") e.parity = ecs::Parity::Any;
    else r.fail("ecs", "parity", "expected even, odd or any");
  }
  if (e.count < 1) r.fail("ecs", "count", "must be positive");

  if (r.has("fit", "input")) {
    std::filesystem::path p(r.str("fit", "input"));
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    s.fit.input = p.lexically_normal().string();
  }
  if (r.has("fit", "column")) s.fit.column = r.str("fit", "column");
  if (r.has("fit", "max_components")) s.fit.max_components = static_cast<int>(r.integer("fit", "max_components"));

  if (r.has("spectra", "taus")) {
    s.spectra_taus = r.convert("spectra", "taus", [](const std::string& v) {
      std::vector<double> out;
      for (const auto& q : parse_quantity_list(v)) out.push_back(time_au(q));
      return out;
    });
  }

  // mode requirements
  const bool needs_pulses = s.mode == Mode::Model || s.mode == Mode::Tdse || s.mode == Mode::Compare;
  if (needs_pulses && !s.pump) throw ConfigError("mode " + to_string(s.mode) + " requires a [pump] section", 0, "pump");
  if (needs_pulses && !r.has("delays")) throw ConfigError("mode " + to_string(s.mode) + " requires [delays]", 0, "delays");
  if (s.mode == Mode::Model && s.resonance_table.empty())
    throw ConfigError("mode model requires a resonance table", 0, "resonances.table");
  if (s.mode == Mode::Fit && s.fit.input.empty()) throw ConfigError("mode fit requires an input scan", 0, "fit.input");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario(ss.str(), path, dir.empty() ? "." : dir.string());
}

}  // namespace attobeat::io
