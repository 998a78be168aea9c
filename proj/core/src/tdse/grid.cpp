#include "attobeat/tdse/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "attobeat/errors.hpp"

namespace attobeat::tdse {

void Grid2e::validate() const {
  if (n < 64) throw DomainError("grid needs at least 64 points per dimension, got " + std::to_string(n));
  if (!(L > 0.0)) throw DomainError("grid extent must be positive");
}

double Grid2e::k(int i) const {
  const double dk = 2.0 * std::numbers::pi / (n * h());
  return (i < (n + 1) / 2 ? i : i - n) * dk;
}

std::vector<double> Grid2e::coordinates() const {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = x(i);
  return v;
}

std::vector<double> Grid2e::wavenumbers() const {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = k(i);
  return v;
}

void SoftCoreModel::validate() const {
  if (!(a_en > 0.0) || !(a_ee > 0.0)) throw DomainError("soft-core parameters must be positive");
  if (!std::isfinite(Z)) throw DomainError("nuclear charge must be finite");
}

double SoftCoreModel::v_en(double x) const { return -Z / std::sqrt(x * x + a_en * a_en); }

double SoftCoreModel::v_ee(double d) const {
  return interacting ? 1.0 / std::sqrt(d * d + a_ee * a_ee) : 0.0;
}

Wavefunction2e::Wavefunction2e(const Grid2e& grid) : grid_(grid) {
  grid_.validate();
  data_.assign(static_cast<std::size_t>(grid_.n) * grid_.n, cd(0.0));
}

double Wavefunction2e::norm() const {
  double s = 0.0;
  for (const cd& z : data_) s += std::norm(z);
  const double h = grid_.h();
  return s * h * h;
}

void Wavefunction2e::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw DomainError("cannot normalize a zero or non-finite state");
  const double s = 1.0 / std::sqrt(nrm);
  for (cd& z : data_) z *= s;
}

cd Wavefunction2e::inner(const Wavefunction2e& other) const {
  if (other.grid_.n != grid_.n) throw StructuralError("wavefunctions live on different grids");
  cd s = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) s += std::conj(data_[i]) * other.data_[i];
  const double h = grid_.h();
  return s * h * h;
}

double Wavefunction2e::exchange_asymmetry() const {
  double m = 0.0;
  const int n = grid_.n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

void Wavefunction2e::symmetrize() {
  const int n = grid_.n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cd a = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = a;
      (*this)(j, i) = a;
    }
}

}  // namespace attobeat::tdse
