#include "attobeat/resonance_set.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "attobeat/errors.hpp"

namespace attobeat {

ResonanceSet::ResonanceSet(double ground_energy, std::vector<Resonance> states)
    : E0_(ground_energy), states_(std::move(states)) {
  if (!std::isfinite(E0_)) throw DomainError("ground energy must be finite");
  std::set<std::string> seen;
  for (const auto& s : states_) {
    if (s.label.empty()) throw StructuralError("resonance label must not be empty");
    if (!seen.insert(s.label).second) throw StructuralError("duplicate resonance label '" + s.label + "'");
    if (!std::isfinite(s.energy.real()) || !std::isfinite(s.energy.imag()))
      throw DomainError("resonance '" + s.label + "' has a non-finite energy");
    if (s.energy.imag() > 0.0) throw DomainError("resonance '" + s.label + "' has Im E > 0");
    if (!(s.energy.real() > E0_))
      throw DomainError("resonance '" + s.label + "' lies below the ground state");
  }
}

double ResonanceTable::first_threshold() const {
  if (!ion_energy) throw DomainError("resonance table has no 'ion' row");
  return *ion_energy - set.ground_energy();
}

double ResonanceTable::second_threshold() const {
  if (!ion_energy) throw DomainError("resonance table has no 'ion' row");
  return -*ion_energy;
}

ResonanceTable read_resonance_table(std::istream& in, const std::string& source) {
  std::optional<double> ground;
  std::optional<double> ion;
  std::vector<Resonance> states;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string label;
    if (!(ls >> label)) continue;
    double re = 0.0, gamma = 0.0;
    if (!(ls >> re >> gamma)) {
      throw IoError(source + ":" + std::to_string(lineno) + ": expected `label re_E_au gamma_au`");
    }
    std::string extra;
    if (ls >> extra) throw IoError(source + ":" + std::to_string(lineno) + ": trailing field '" + extra + "'");
    if (gamma < 0.0) throw IoError(source + ":" + std::to_string(lineno) + ": negative width");
    if (label == "ground") {
      if (ground) throw IoError(source + ":" + std::to_string(lineno) + ": duplicate 'ground' row");
      ground = re;
    } else if (label == "ion") {
      if (ion) throw IoError(source + ":" + std::to_string(lineno) + ": duplicate 'ion' row");
      ion = re;
    } else {
      states.push_back({label, {re, -0.5 * gamma}});
    }
  }
  if (!ground) throw IoError(source + ": missing 'ground' row");
  return {ResonanceSet(*ground, std::move(states)), ion};
}

ResonanceTable load_resonance_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open resonance table " + path);
  return read_resonance_table(in, path);
}

void write_resonance_table(std::ostream& out, const ResonanceTable& table) {
  char buf[128];
  auto row = [&](const std::string& label, double re, double gamma) {
    std::snprintf(buf, sizeof buf, " %.11e %.11e\n", re, gamma);
    out << label << buf;
  };
  out << "# label re_E_au gamma_au\n";
  row("ground", table.set.ground_energy(), 0.0);
  if (table.ion_energy) row("ion", *table.ion_energy, 0.0);
  for (const auto& s : table.set.states()) row(s.label, s.energy.real(), s.width());
}

}  // namespace attobeat
