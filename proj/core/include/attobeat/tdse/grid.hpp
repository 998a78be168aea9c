#pragma once

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <vector>

#include <Eigen/Dense>

namespace attobeat::tdse {

using cd = std::complex<double>;

// 64-byte aligned storage so FFT plans made on one buffer apply to any other.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) {}
  T* allocate(std::size_t n) {
    const std::size_t bytes = ((n * sizeof(T) + 63) / 64) * 64;
    void* p = std::aligned_alloc(64, bytes == 0 ? 64 : bytes);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) { std::free(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
};

using cvec = std::vector<cd, AlignedAllocator<cd>>;

// N points per dimension on [-L, L], spacing 2L/(N-1).
struct Grid2e {
  int n = 256;
  double L = 50.0;

  void validate() const;
  double h() const { return 2.0 * L / (n - 1); }
  double x(int i) const { return -L + i * h(); }
  // FFT-ordered angular wavenumber for index i
  double k(int i) const;
  std::vector<double> coordinates() const;
  std::vector<double> wavenumbers() const;
};

struct SoftCoreModel {
  double Z = 2.0;
  double a_en = 0.7;
  double a_ee = 1.0;
  bool interacting = true;

  void validate() const;
  double v_en(double x) const;
  double v_ee(double d) const;
  double potential(double x1, double x2) const { return v_en(x1) + v_en(x2) + v_ee(x1 - x2); }
};

// Row-major amplitude psi(x1_i, x2_j) at index i*N + j. Singlet only.
class Wavefunction2e {
 public:
  Wavefunction2e() = default;
  explicit Wavefunction2e(const Grid2e& grid);

  const Grid2e& grid() const { return grid_; }
  int n() const { return grid_.n; }
  cd* data() { return data_.data(); }
  const cd* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }
  cd& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * grid_.n + j]; }
  cd operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * grid_.n + j]; }

  using Map = Eigen::Map<Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using ConstMap = Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  Map matrix() { return Map(data(), grid_.n, grid_.n); }
  ConstMap matrix() const { return ConstMap(data(), grid_.n, grid_.n); }

  // \int |psi|^2 dx1 dx2
  double norm() const;
  void normalize();
  // <this|other> with the grid volume element
  cd inner(const Wavefunction2e& other) const;
  // max |psi(x1,x2) - psi(x2,x1)|
  double exchange_asymmetry() const;
  void symmetrize();

 private:
  Grid2e grid_;
  cvec data_;
};

}  // namespace attobeat::tdse
