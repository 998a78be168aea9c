#include "attobeat/units.hpp"

#include <cmath>
#include <string>

#include "attobeat/errors.hpp"

namespace attobeat::units {

double photon_energy_from_wavelength(double lambda_nm) {
  if (!(lambda_nm > 0.0)) {
    throw DomainError("wavelength must be positive, got " + std::to_string(lambda_nm) + " nm");
  }
  return kUnits.nm_eV_product / lambda_nm;
}

double wavelength_from_photon_energy(double energy_eV) {
  if (!(energy_eV > 0.0)) {
    throw DomainError("photon energy must be positive, got " + std::to_string(energy_eV) + " eV");
  }
  return kUnits.nm_eV_product / energy_eV;
}

double peak_field_from_intensity(double intensity_Wcm2) {
  if (intensity_Wcm2 < 0.0) throw DomainError("peak intensity must be non-negative");
  return std::sqrt(intensity_Wcm2 / kUnits.au_intensity);
}

double intensity_from_peak_field(double field_au) { return field_au * field_au * kUnits.au_intensity; }

}  // namespace attobeat::units
