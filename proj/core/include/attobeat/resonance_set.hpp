#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace attobeat {

struct Resonance {
  std::string label;
  std::complex<double> energy;  // Re E - i Gamma/2, total energy in a.u.

  double width() const { return -2.0 * energy.imag(); }
};

// Ground state plus the intermediate quasi-bound states reached by the pump.
// A zero width is accepted for synthetic studies (infinite lifetime).
class ResonanceSet {
 public:
  ResonanceSet() = default;
  ResonanceSet(double ground_energy, std::vector<Resonance> states);

  double ground_energy() const { return E0_; }
  const std::vector<Resonance>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }

  // E_m - E_0
  std::complex<double> excitation(std::size_t m) const { return states_[m].energy - E0_; }

 private:
  double E0_ = 0.0;
  std::vector<Resonance> states_;
};

// Plain-text table `label re_E_au gamma_au`, '#' comments. Two labels are
// reserved: `ground` (the two-electron ground state, gamma 0) and `ion` (the
// one-electron ion ground state, which fixes both ionization thresholds).
struct ResonanceTable {
  ResonanceSet set;
  std::optional<double> ion_energy;

  // I1 = E_ion - E_0, I2 = -E_ion. Throws DomainError without an ion row.
  double first_threshold() const;
  double second_threshold() const;
};

ResonanceTable read_resonance_table(std::istream& in, const std::string& source = "<stream>");
ResonanceTable load_resonance_table(const std::string& path);
void write_resonance_table(std::ostream& out, const ResonanceTable& table);

}  // namespace attobeat
