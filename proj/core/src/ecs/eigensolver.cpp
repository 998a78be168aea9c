#include "attobeat/ecs/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "attobeat/errors.hpp"

namespace attobeat::ecs {

std::string to_string(EigenTag tag) {
  switch (tag) {
    case EigenTag::Bound: return "bound";
    case EigenTag::Resonance: return "resonance";
    case EigenTag::RotatedContinuum: return "rotated-continuum";
    default: return "unclassified";
  }
}

void project_sector(Eigen::VectorXcd& u, int n, Exchange ex, Parity par) {
  if (ex != Exchange::Any) {
    const double s = ex == Exchange::Symmetric ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const cd a = u(i * n + j), b = u(j * n + i);
        u(i * n + j) = 0.5 * (a + s * b);
        u(j * n + i) = 0.5 * (b + s * a);
      }
  }
  if (par != Parity::Any) {
    const double s = par == Parity::Even ? 1.0 : -1.0;
    const Eigen::Index N = u.size();
    for (Eigen::Index k = 0; k < N / 2 + 1; ++k) {
      const Eigen::Index m = N - 1 - k;  // (i, j) -> (n-1-i, n-1-j)
      if (m < k) break;
      const cd a = u(k), b = u(m);
      u(k) = 0.5 * (a + s * b);
      u(m) = 0.5 * (b + s * a);
    }
  }
}

std::vector<ComplexEigenpair> eigenpairs_near(const EcsHamiltonian& H, cd shift, int count, const EigenOptions& opts) {
  if (count < 1) throw DomainError("eigenpair count must be positive");
  const int n = H.n();
  const Eigen::Index N = H.matrix.rows();
  const int m = opts.krylov_dim > 0 ? opts.krylov_dim : std::max(2 * count + 20, 40);
  if (m <= count) throw DomainError("Krylov dimension must exceed the eigenpair count");

  Eigen::SparseMatrix<cd> A = H.matrix;
  for (Eigen::Index i = 0; i < N; ++i) A.coeffRef(i, i) -= shift;
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<cd>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) throw ConvergenceError("sparse LU of H - shift failed: " + lu.lastErrorMessage(), NAN);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(N);
  for (Eigen::Index i = 0; i < N; ++i) v(i) = cd(gauss(rng), gauss(rng));

  std::vector<ComplexEigenpair> result;
  double worst = INFINITY;
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    project_sector(v, n, opts.exchange, opts.parity);
    Eigen::MatrixXcd V(N, m + 1);
    Eigen::MatrixXcd Hm = Eigen::MatrixXcd::Zero(m + 1, m);
    V.col(0) = v / v.norm();
    int k = 0;
    for (; k < m; ++k) {
      Eigen::VectorXcd w = lu.solve(V.col(k));
      project_sector(w, n, opts.exchange, opts.parity);
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXcd c = V.leftCols(k + 1).adjoint() * w;
        w -= V.leftCols(k + 1) * c;
        Hm.col(k).head(k + 1) += c;
      }
      const double beta = w.norm();
      Hm(k + 1, k) = beta;
      if (beta < 1e-300) {
        ++k;
        break;
      }
      V.col(k + 1) = w / beta;
    }
    const int dim = std::min(k, m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Hm.topLeftCorner(dim, dim));
    std::vector<int> order(dim);
    for (int i = 0; i < dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b)); });
    const int want = std::min(count, dim);

    result.clear();
    worst = 0.0;
    Eigen::VectorXcd restart_vec = Eigen::VectorXcd::Zero(N);
    for (int r = 0; r < want; ++r) {
      const int idx = order[r];
      const cd mu = es.eigenvalues()(idx);
      Eigen::VectorXcd u = V.leftCols(dim) * es.eigenvectors().col(idx);
      project_sector(u, n, opts.exchange, opts.parity);
      ComplexEigenpair p;
      const Eigen::VectorXcd Hu = H.matrix * u;
      const cd cuu = c_product(u, u);
      // the c-Rayleigh quotient is second-order accurate for complex symmetric H
      p.E = std::abs(cuu) > 1e-14 * u.squaredNorm() ? c_product(u, Hu) / cuu : shift + 1.0 / mu;
      p.residual = (Hu - p.E * u).norm() / u.norm() / std::max(1.0, std::abs(p.E));
      worst = std::max(worst, p.residual);
      if (std::abs(cuu) < 1e-14 * u.squaredNorm()) throw ConvergenceError("eigenvector is c-self-orthogonal", p.residual);
      p.u = u / std::sqrt(cuu);
      restart_vec += u / u.norm();
      result.push_back(std::move(p));
    }
    if (worst < opts.tol) break;
    v = restart_vec;
  }
  if (!(worst < opts.tol)) {
    throw ConvergenceError("shift-invert Arnoldi did not converge (worst residual " + std::to_string(worst) + ")",
                           worst);
  }
  std::sort(result.begin(), result.end(),
            [&](const ComplexEigenpair& a, const ComplexEigenpair& b) { return std::abs(a.E - shift) < std::abs(b.E - shift); });
  return result;
}

double c_orthogonality_defect(const std::vector<ComplexEigenpair>& pairs) {
  double m = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) m = std::max(m, std::abs(c_product(pairs[i].u, pairs[j].u)));
  return m;
}

}  // namespace attobeat::ecs
