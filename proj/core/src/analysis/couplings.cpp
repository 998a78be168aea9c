#include "attobeat/analysis/couplings.hpp"

#include <Eigen/Dense>

#include "attobeat/errors.hpp"

namespace attobeat::analysis {

WindowOverlaps fit_window_couplings(const std::vector<double>& tau, const std::vector<double>& yield,
                                    const std::vector<std::complex<double>>& excitation) {
  const std::size_t n = tau.size(), M = excitation.size();
  if (yield.size() != n) throw StructuralError("delay and yield lengths differ");
  if (n < 2 * M + 2) throw DomainError("too few scan points for the coupling fit");
  Eigen::MatrixXd A(n, 1 + 2 * M);
  Eigen::VectorXd y(n);
  double scale = 0.0;
  for (double v : yield) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    for (std::size_t m = 0; m < M; ++m) {
      const std::complex<double> e = std::exp(std::complex<double>(0.0, -1.0) * excitation[m] * tau[i]);
      // 2 Re(g e) = 2 (Re g Re e - Im g Im e)
      A(i, 1 + 2 * m) = 2.0 * e.real();
      A(i, 2 + 2 * m) = -2.0 * e.imag();
    }
    y(i) = yield[i] / scale;
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y) * scale;
  WindowOverlaps ov;
  ov.gamma_norm = 0.5 * c(0);
  ov.excitation = excitation;
  for (std::size_t m = 0; m < M; ++m) ov.g.emplace_back(c(1 + 2 * m), c(2 + 2 * m));
  ov.G = Eigen::MatrixXcd::Zero(M, M);
  if (ov.gamma_norm > 0.0) {
    for (std::size_t a = 0; a < M; ++a)
      for (std::size_t b = 0; b < M; ++b) ov.G(a, b) = std::conj(ov.g[a]) * ov.g[b] / ov.gamma_norm;
  }
  return ov;
}

}  // namespace attobeat::analysis
