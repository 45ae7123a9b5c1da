#pragma once

#include "trotterion/models.hpp"

#include <vector>

namespace trotterion {

inline constexpr double kDegeneracyTol = 1e-9;

struct EnergyLevel {
  double energy = 0.0;
  std::vector<Eigen::Index> columns;  // eigenvector columns spanning the level
};

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  Operator eigenvectors;        // orthonormal columns
  std::vector<EnergyLevel> levels;
};

/// exp(-iθH) by Hermitian eigendecomposition.
UnitaryMatrix propagator(const WeightedPauliSum& h, double theta);
UnitaryMatrix propagator(const HermitianMatrix& h, double theta);

/// Ordered product of exact short-interval propagators over the ramp, each
/// interval treated with a fourth-order commutator-free Magnus step.
UnitaryMatrix time_ordered_propagator(const RampSpec& ramp, std::size_t fine_steps = 2000);

/// Same, stopping at an intermediate phase theta_end <= theta_total.
UnitaryMatrix time_ordered_propagator(const RampSpec& ramp, double theta_end, std::size_t fine_steps);

Spectrum spectrum(const WeightedPauliSum& h, double degeneracy_tol = kDegeneracyTol);
Spectrum spectrum(const HermitianMatrix& h, double degeneracy_tol = kDegeneracyTol);

std::vector<double> level_populations(const StateVector& psi, const Spectrum& spec);

/// Lowest eigenvector with the largest-magnitude amplitude made real positive.
StateVector instantaneous_ground_state(const WeightedPauliSum& h, double degeneracy_tol = kDegeneracyTol);

}  // namespace trotterion
