#include "trotterion/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace trotterion {

namespace {

void require_hermitian(const HermitianMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("hamiltonian must be square");
  spins_for_dimension(h.rows());
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw std::invalid_argument("hamiltonian is not Hermitian");
}

}  // namespace

UnitaryMatrix propagator(const HermitianMatrix& h, double theta) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<HermitianMatrix> es(h);
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([theta](double e) { return std::polar(1.0, -theta * e); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryMatrix propagator(const WeightedPauliSum& h, double theta) { return propagator(hamiltonian_matrix(h), theta); }

UnitaryMatrix time_ordered_propagator(const RampSpec& ramp, std::size_t fine_steps) {
  return time_ordered_propagator(ramp, ramp.theta_total, fine_steps);
}

UnitaryMatrix time_ordered_propagator(const RampSpec& ramp, double theta_end, std::size_t fine_steps) {
  ramp.validate();
  if (fine_steps == 0) throw std::invalid_argument("fine_steps must be positive");
  const double dt = theta_end / static_cast<double>(fine_steps);
  const double g = std::sqrt(3.0) / 6.0;
  const double c = std::sqrt(3.0) / 12.0;
  UnitaryMatrix u = UnitaryMatrix::Identity(4, 4);
  for (std::size_t k = 0; k < fine_steps; ++k) {
    const double t0 = dt * static_cast<double>(k);
    const HermitianMatrix h1 = hamiltonian_matrix(ramp.hamiltonian_at(t0 + dt * (0.5 - g)));
    const HermitianMatrix h2 = hamiltonian_matrix(ramp.hamiltonian_at(t0 + dt * (0.5 + g)));
    const HermitianMatrix comm = h1 * h2 - h2 * h1;
    HermitianMatrix k_eff = 0.5 * dt * (h1 + h2) + Complex(0.0, c * dt * dt) * comm;
    k_eff = 0.5 * (k_eff + k_eff.adjoint()).eval();
    u = propagator(k_eff, 1.0) * u;
  }
  return u;
}

Spectrum spectrum(const HermitianMatrix& h, double degeneracy_tol) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<HermitianMatrix> es(h);
  Spectrum s;
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
    const double e = s.eigenvalues[k];
    if (s.levels.empty() || e - s.levels.back().energy > degeneracy_tol) {
      s.levels.push_back({e, {k}});
    } else {
      auto& level = s.levels.back();
      level.columns.push_back(k);
      double sum = 0.0;
      for (auto col : level.columns) sum += s.eigenvalues[col];
      level.energy = sum / static_cast<double>(level.columns.size());
    }
  }
  return s;
}

Spectrum spectrum(const WeightedPauliSum& h, double degeneracy_tol) {
  return spectrum(hamiltonian_matrix(h), degeneracy_tol);
}

std::vector<double> level_populations(const StateVector& psi, const Spectrum& spec) {
  if (psi.size() != spec.eigenvectors.rows()) throw DimensionError("state does not match spectrum dimension");
  const Eigen::VectorXcd overlaps = spec.eigenvectors.adjoint() * psi;
  std::vector<double> pops;
  pops.reserve(spec.levels.size());
  for (const auto& level : spec.levels) {
    double p = 0.0;
    for (auto col : level.columns) p += std::norm(overlaps[col]);
    pops.push_back(p);
  }
  return pops;
}

StateVector instantaneous_ground_state(const WeightedPauliSum& h, double degeneracy_tol) {
  const auto spec = spectrum(h, degeneracy_tol);
  if (spec.levels.front().columns.size() > 1) {
    throw std::invalid_argument("ground level is " + std::to_string(spec.levels.front().columns.size()) +
                                "-fold degenerate");
  }
  StateVector g = spec.eigenvectors.col(0);
  Eigen::Index best = 0;
  g.cwiseAbs().maxCoeff(&best);
  g *= std::conj(g[best]) / std::abs(g[best]);
  return g;
}

}  // namespace trotterion
