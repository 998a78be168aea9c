#pragma once

#include <complex>

namespace attobeat {

// sin^2 applied to the field (default) or to the intensity, in which case the
// field envelope is sin.
enum class EnvelopeConvention { Field, Intensity };

// Analytic XUV pulse. All quantities in atomic units except the intensity,
// which is kept in W/cm^2 next to the derived peak field.
class Pulse {
 public:
  Pulse(double total_duration, double central_energy, double peak_intensity_Wcm2,
        double cep = 0.0, double start_time = 0.0,
        EnvelopeConvention convention = EnvelopeConvention::Field);

  double total_duration() const { return T_; }
  double central_energy() const { return omega_; }
  double peak_intensity() const { return I0_; }
  double peak_field() const { return F0_; }
  double cep() const { return cep_; }
  double start_time() const { return t0_; }
  double end_time() const { return t0_ + T_; }
  double peak_time() const { return t0_ + 0.5 * T_; }
  EnvelopeConvention convention() const { return convention_; }

  // Same pulse, shifted so that it starts at t0.
  Pulse starting_at(double t0) const;

 private:
  double T_, omega_, I0_, F0_, cep_, t0_;
  EnvelopeConvention convention_;
};

// Field envelope in [0, 1]; zero outside the support.
double envelope_at(const Pulse& pulse, double t);

double field_at(const Pulse& pulse, double t);

// Sum of several pulses (pump + probe share one timeline).
template <class Range>
double total_field(const Range& pulses, double t) {
  double f = 0.0;
  for (const Pulse& p : pulses) f += field_at(p, t);
  return f;
}

// S(E) = \int F(t) e^{iEt} dt, closed form.
std::complex<double> spectral_amplitude(const Pulse& pulse, double E);

// Co-rotating part only: (F0/2) e^{-i cep} \int env(s) e^{i(E-omega)s} ds,
// phase-referenced to the pulse start. Its modulus is symmetric about omega.
std::complex<double> envelope_spectrum(const Pulse& pulse, double E);

// FWHM of the cycle-averaged intensity envelope.
double intensity_fwhm(const Pulse& pulse);

}  // namespace attobeat
