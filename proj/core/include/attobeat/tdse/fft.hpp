#pragma once

#include <complex>
#include <memory>

namespace attobeat::tdse {

// In-place unnormalized 2D FFT on n x n row-major arrays that are 64-byte
// aligned. Plans use FFTW_ESTIMATE so results do not depend on timing.
// execute() is safe to call concurrently on distinct arrays.
class Fft2 {
 public:
  explicit Fft2(int n);
  ~Fft2();
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

  int n() const { return n_; }
  void forward(std::complex<double>* data) const;
  void backward(std::complex<double>* data) const;

 private:
  struct Plans;
  int n_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace attobeat::tdse
