#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace attobeat::io {

// A number with an optional unit: "20 nm", "1500 as", "1e12 W/cm2", "0.3".
struct Quantity {
  double value = 0.0;
  std::string unit;  // empty when unitless
};

// Throws std::invalid_argument with a readable message.
Quantity parse_quantity(std::string_view text);
// "[a, b, c] unit" (the unit applies to every element) or a single quantity.
std::vector<Quantity> parse_quantity_list(std::string_view text);

// Conversions to atomic units. `au` (or no unit) passes through.
double energy_au(const Quantity& q);     // eV, au/hartree, nm (photon wavelength)
double time_au(const Quantity& q);       // as, fs, au
double length_au(const Quantity& q);     // au/bohr
double intensity_Wcm2(const Quantity& q);  // W/cm2

}  // namespace attobeat::io
