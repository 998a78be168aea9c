#pragma once

// Atomic units are used everywhere inside the library. These helpers are the
// only place where eV, nm, as, fs and W/cm^2 appear.

namespace attobeat::units {

struct UnitConstants {
  double hartree_eV = 27.211386245988;
  double autime_as = 24.188843265857;
  double nm_eV_product = 1239.841984;
  double au_intensity = 3.50944758e16;  // W/cm^2 for unit peak field
};

inline constexpr UnitConstants kUnits{};

constexpr double eV_to_au(double e) { return e / kUnits.hartree_eV; }
constexpr double au_to_eV(double e) { return e * kUnits.hartree_eV; }
constexpr double as_to_au(double t) { return t / kUnits.autime_as; }
constexpr double au_to_as(double t) { return t * kUnits.autime_as; }
constexpr double fs_to_au(double t) { return 1000.0 * t / kUnits.autime_as; }
constexpr double au_to_fs(double t) { return t * kUnits.autime_as / 1000.0; }

// Photon energy in eV for a wavelength in nm. Throws DomainError for lambda <= 0.
double photon_energy_from_wavelength(double lambda_nm);
// Wavelength in nm for a photon energy in eV. Throws DomainError for e <= 0.
double wavelength_from_photon_energy(double energy_eV);

// Peak field amplitude (a.u.) of a linearly polarized pulse with the given
// peak intensity in W/cm^2.
double peak_field_from_intensity(double intensity_Wcm2);
double intensity_from_peak_field(double field_au);

}  // namespace attobeat::units
