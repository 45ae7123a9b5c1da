#pragma once

#include "trotterion/compiler.hpp"
#include "trotterion/metrics.hpp"
#include "trotterion/observables.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace trotterion {

struct NoiseParams {
  double sigma_rel = 0.0;
  std::map<GateKind, double> miscalibration;
  std::size_t shots = 200;
  bool analytic = false;  // average exact expectations instead of sampling outcomes
  std::uint64_t seed = 0;

  void validate() const;
};

/// θ → θ(1+ε)² for O1/O2/O4 (phase ∝ Ω²), θ → θ(1+ε) for O3 (phase ∝ Ω).
GateSequence perturb_sequence(const GateSequence& seq, double eps);

/// θ → θ(1 + rel_err) on every gate of the given kind.
GateSequence apply_miscalibration(const GateSequence& seq, GateKind kind, double rel_err);
CompiledProgram apply_miscalibration(const CompiledProgram& program, GateKind kind, double rel_err);

/// Relative coupling error for one shot: Normal(0, σ), resampled while ≤ -1.
double draw_coupling_error(double sigma_rel, SplitMix64& rng);

struct ShotEnsemble {
  std::vector<std::string> labels;
  std::vector<double> thetas;               // one per point: θ = 0 then each checkpoint
  std::vector<std::vector<double>> mean;    // [point][observable]
  std::vector<std::vector<double>> error;   // standard error of the mean
  std::vector<std::vector<std::size_t>> counts;  // outcomes equal to 1 (sampling mode)
  std::size_t shots = 0;
  bool analytic = false;
};

ShotEnsemble run_noisy_ensemble(const CompiledProgram& program, const StateVector& psi0,
                                const std::vector<Observable>& observables, const NoiseParams& params);

/// Exact expectations at θ = 0 and every checkpoint.
std::vector<std::vector<double>> checkpoint_expectations(const CompiledProgram& program, const StateVector& psi0,
                                                         const std::vector<Observable>& observables);

/// Truth table of the noisy program, averaged over coupling fluctuations.
TruthTable noisy_truth_table(const GateSequence& program, const std::vector<LabelledState>& basis,
                             const UnitaryMatrix& reference, const NoiseParams& params);

}  // namespace trotterion
