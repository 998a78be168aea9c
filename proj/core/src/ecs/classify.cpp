#include "attobeat/ecs/classify.hpp"

#include <algorithm>
#include <cmath>

#include "attobeat/errors.hpp"

namespace attobeat::ecs {

Classification classify_and_export(ThetaTrajectory& traj, double ground_energy, const ClassifyOptions& opts) {
  if (traj.thetas.size() < 2 || traj.pairs.size() != traj.thetas.size()) {
    throw StructuralError("classification needs eigenpairs at two or more scaling angles");
  }
  Classification out;
  auto& ref = traj.pairs.front();
  std::vector<Resonance> states;
  std::vector<double> continuum;
  for (auto& p : ref) {
    double disp = 0.0;
    for (std::size_t t = 1; t < traj.thetas.size(); ++t) {
      const double dtheta = std::abs(traj.thetas[t] - traj.thetas[0]);
      if (dtheta == 0.0) throw DomainError("scaling angles must differ");
      double best = INFINITY;
      for (const auto& q : traj.pairs[t]) best = std::min(best, std::abs(q.E - p.E));
      disp = std::max(disp, best * 0.1 / dtheta);
    }
    EigenTag tag;
    if (std::abs(p.E.imag()) < opts.bound_tol) {
      tag = EigenTag::Bound;
    } else if (disp < opts.stability && p.E.imag() < 0.0) {
      tag = EigenTag::Resonance;
    } else {
      tag = EigenTag::RotatedContinuum;
      continuum.push_back(disp);
    }
    p.tag = tag;
    out.eigenvalues.push_back({p.E, disp, tag});
  }
  std::vector<ClassifiedEigenvalue> res;
  for (const auto& e : out.eigenvalues)
    if (e.tag == EigenTag::Resonance && e.E.real() > ground_energy) res.push_back(e);
  std::sort(res.begin(), res.end(), [](const auto& a, const auto& b) { return a.E.real() < b.E.real(); });
  for (std::size_t i = 0; i < res.size(); ++i) states.push_back({opts.label_prefix + std::to_string(i + 1), res[i].E});
  out.resonances = ResonanceSet(ground_energy, std::move(states));
  if (!continuum.empty()) {
    std::nth_element(continuum.begin(), continuum.begin() + continuum.size() / 2, continuum.end());
    out.median_continuum_displacement = continuum[continuum.size() / 2];
  }
  if (out.resonances.empty()) out.warnings.push_back("no theta-stable decaying eigenvalues found");
  return out;
}

}  // namespace attobeat::ecs
