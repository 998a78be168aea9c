#include "attobeat/pulse.hpp"

#include <cmath>
#include <numbers>

#include "attobeat/errors.hpp"
#include "attobeat/units.hpp"

namespace attobeat {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// \int_0^T e^{i nu s} ds = T e^{i nu T/2} sinc(nu T/2)
cd box_transform(double nu, double T) {
  const double x = 0.5 * nu * T;
  const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return T * sinc * std::polar(1.0, x);
}

cd envelope_transform(const Pulse& p, double nu) {
  const double T = p.total_duration();
  if (p.convention() == EnvelopeConvention::Field) {
    const double k = 2.0 * kPi / T;
    return 0.5 * box_transform(nu, T) - 0.25 * box_transform(nu + k, T) -
           0.25 * box_transform(nu - k, T);
  }
  const double k = kPi / T;
  return (box_transform(nu + k, T) - box_transform(nu - k, T)) / cd(0.0, 2.0);
}

}  // namespace

Pulse::Pulse(double total_duration, double central_energy, double peak_intensity_Wcm2, double cep,
             double start_time, EnvelopeConvention convention)
    : T_(total_duration),
      omega_(central_energy),
      I0_(peak_intensity_Wcm2),
      F0_(0.0),
      cep_(cep),
      t0_(start_time),
      convention_(convention) {
  if (!(T_ > 0.0)) throw DomainError("pulse duration must be positive");
  if (!(omega_ > 0.0)) throw DomainError("pulse central energy must be positive");
  if (!(I0_ >= 0.0)) throw DomainError("pulse peak intensity must be non-negative");
  F0_ = units::peak_field_from_intensity(I0_);
}

Pulse Pulse::starting_at(double t0) const {
  return Pulse(T_, omega_, I0_, cep_, t0, convention_);
}

double envelope_at(const Pulse& p, double t) {
  const double s = t - p.start_time();
  if (s < 0.0 || s > p.total_duration()) return 0.0;
  const double v = std::sin(kPi * s / p.total_duration());
  return p.convention() == EnvelopeConvention::Field ? v * v : v;
}

double field_at(const Pulse& p, double t) {
  const double env = envelope_at(p, t);
  if (env == 0.0) return 0.0;
  const double s = t - p.start_time();
  return p.peak_field() * env * std::cos(p.central_energy() * s + p.cep());
}

cd spectral_amplitude(const Pulse& p, double E) {
  const double w = p.central_energy();
  const cd ph = std::polar(1.0, p.cep());
  const cd s = 0.5 * p.peak_field() *
               (ph * envelope_transform(p, E + w) + std::conj(ph) * envelope_transform(p, E - w));
  return s * std::polar(1.0, E * p.start_time());
}

cd envelope_spectrum(const Pulse& p, double E) {
  return 0.5 * p.peak_field() * std::polar(1.0, -p.cep()) *
         envelope_transform(p, E - p.central_energy());
}

double intensity_fwhm(const Pulse& p) {
  // half-maximum crossing u of sin^4(pi u) = 1/2 (field) or sin^2(pi u) = 1/2
  const double level = p.convention() == EnvelopeConvention::Field ? std::pow(0.5, 0.25)
                                                                     : std::sqrt(0.5);
  const double u = std::asin(level) / kPi;
  return p.total_duration() * (1.0 - 2.0 * u);
}

}  // namespace attobeat
