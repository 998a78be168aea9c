#include "attobeat/tdse/ground_state.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "attobeat/errors.hpp"
#include "attobeat/tdse/propagator.hpp"

namespace attobeat::tdse {

namespace {

void axpy(Wavefunction2e& y, cd a, const Wavefunction2e& x) {
  cd* py = y.data();
  const cd* px = x.data();
  for (std::size_t i = 0; i < y.size(); ++i) py[i] += a * px[i];
}

void scale(Wavefunction2e& y, cd a) {
  cd* p = y.data();
  for (std::size_t i = 0; i < y.size(); ++i) p[i] *= a;
}

Wavefunction2e imaginary_time(const SplitOperator& H, const Grid2e& grid, const GroundStateOptions& opts) {
  const int n = grid.n;
  const double dt = opts.imaginary_dt;
  Wavefunction2e psi(grid);
  const auto x = grid.coordinates();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) psi(i, j) = std::exp(-x[i] * x[i] - x[j] * x[j]);
  psi.normalize();

  const std::size_t nn = psi.size();
  std::vector<double> halfV(nn), kin(nn);
  const auto& V = H.potential();
  for (std::size_t i = 0; i < nn; ++i) halfV[i] = std::exp(-0.5 * dt * V[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double k2 = grid.k(i) * grid.k(i) + grid.k(j) * grid.k(j);
      kin[static_cast<std::size_t>(i) * n + j] = std::exp(-0.5 * dt * k2) / static_cast<double>(nn);
    }

  double last = H.energy(psi);
  for (int s = 1; s <= opts.imaginary_max_steps; ++s) {
    cd* p = psi.data();
    for (std::size_t i = 0; i < nn; ++i) p[i] *= halfV[i];
    H.fft().forward(p);
    for (std::size_t i = 0; i < nn; ++i) p[i] *= kin[i];
    H.fft().backward(p);
    for (std::size_t i = 0; i < nn; ++i) p[i] *= halfV[i];
    psi.normalize();
    if (s % 50 == 0) {
      const double e = H.energy(psi);
      if (std::abs(e - last) < opts.imaginary_tol) break;
      last = e;
    }
  }
  psi.symmetrize();
  psi.normalize();
  return psi;
}

}  // namespace

GroundState ground_state(const Grid2e& grid, const SoftCoreModel& model, const GroundStateOptions& opts) {
  grid.validate();
  model.validate();
  PropagatorOptions popts;
  popts.dt = opts.imaginary_dt;
  const SplitOperator H(grid, model, popts);

  GroundState gs;
  gs.psi = imaginary_time(H, grid, opts);

  const int m = std::max(3, opts.krylov_dim);
  std::vector<Wavefunction2e> basis;
  basis.reserve(m + 1);
  Wavefunction2e w(grid);
  double residual = INFINITY;
  double energy = H.energy(gs.psi);
  for (int restart = 0; restart < opts.max_restarts; ++restart) {
    basis.clear();
    basis.push_back(gs.psi);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    int k = 0;
    for (; k < m; ++k) {
      H.apply_hamiltonian(basis[k], w);
      // full reorthogonalization, twice
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j <= k; ++j) {
          const cd c = basis[j].inner(w);
          if (pass == 0 && j >= k - 1) T(j, k) += c.real();
          axpy(w, -c, basis[j]);
        }
      }
      if (k > 0) T(k - 1, k) = T(k, k - 1);
      const double beta = std::sqrt(w.norm());
      if (k + 1 < m) {
        T(k + 1, k) = beta;
        if (beta < 1e-14) {
          ++k;
          break;
        }
        Wavefunction2e next = w;
        scale(next, 1.0 / beta);
        basis.push_back(std::move(next));
      }
    }
    const int dim = std::min<int>(k, static_cast<int>(basis.size()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T.topLeftCorner(dim, dim));
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    Wavefunction2e ritz(grid);
    for (int j = 0; j < dim; ++j) axpy(ritz, y(j), basis[j]);
    ritz.symmetrize();
    ritz.normalize();
    gs.psi = std::move(ritz);
    energy = es.eigenvalues()(0);

    H.apply_hamiltonian(gs.psi, w);
    axpy(w, -energy, gs.psi);
    residual = std::sqrt(w.norm());
    gs.restarts = restart + 1;
    if (residual < opts.residual_tol) break;
  }
  gs.energy = H.energy(gs.psi);
  gs.residual = residual;
  if (!(residual < opts.residual_tol)) {
    throw ConvergenceError("ground state Lanczos did not converge (residual " + std::to_string(residual) + ")",
                           residual);
  }
  // fix the global phase so the state is real and positive at its maximum
  std::size_t imax = 0;
  for (std::size_t i = 0; i < gs.psi.size(); ++i)
    if (std::abs(gs.psi.data()[i]) > std::abs(gs.psi.data()[imax])) imax = i;
  const cd ph = std::abs(gs.psi.data()[imax]) > 0 ? std::conj(gs.psi.data()[imax]) / std::abs(gs.psi.data()[imax])
                                                  : cd(1.0);
  scale(gs.psi, ph);
  return gs;
}

}  // namespace attobeat::tdse
