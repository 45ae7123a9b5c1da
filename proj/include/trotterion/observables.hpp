#pragma once

#include "trotterion/pauli.hpp"
#include "trotterion/rng.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace trotterion {

/// Scalar readout of a state. Probability-type observables (populations,
/// Hamming-weight classes) sample as 0/1; the rest sample as ±1.
struct Observable {
  enum class Kind { Population, Projector, HammingWeight, Parity, AnalysisParity, PauliExpectation };

  Kind kind = Kind::Parity;
  std::string label;
  std::uint64_t basis_index = 0;
  std::size_t weight = 0;
  double phi = 0.0;
  PauliString pauli;
  StateVector target;  // Projector only

  /// "pop:<uudd>" (labels with +-rl give product-state projectors), "hamming" (expands to P0…Pn), "hamming:<k>", "parity",
  /// "parity:<phi>", "pauli:<ZXX>".
  static std::vector<Observable> parse(std::string_view spec, std::size_t n);

  bool is_probability() const { return kind == Kind::Population || kind == Kind::Projector || kind == Kind::HammingWeight; }
  double evaluate(const StateVector& psi) const;
  double sample(const StateVector& psi, SplitMix64& rng) const;
};

std::uint64_t basis_index_from_label(std::string_view label);

}  // namespace trotterion
