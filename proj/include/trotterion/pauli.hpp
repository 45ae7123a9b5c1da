#pragma once

#include "trotterion/types.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trotterion {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-spin Pauli operators. Character k of the string
/// form acts on spin k, so "ZXX" is Z on spin 0.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> ops);

  static PauliString identity(std::size_t n);
  static PauliString parse(std::string_view text);
  static PauliString single(std::size_t n, std::size_t spin, Pauli p);
  static PauliString pair(std::size_t n, std::size_t i, std::size_t j, Pauli p);

  std::size_t size() const { return ops_.size(); }
  Pauli operator[](std::size_t k) const { return ops_[k]; }
  Pauli& operator[](std::size_t k) { return ops_[k]; }
  const std::vector<Pauli>& ops() const { return ops_; }

  std::size_t weight() const;
  bool is_identity() const { return weight() == 0; }
  std::string str() const;

  // Bit k set if spin k carries X or Y (flip) / Y or Z (sign).
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;
  std::size_t y_count() const;

  bool commutes_with(const PauliString& other) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> ops_;
};

/// i^phase * string
struct PhasedPauli {
  int phase = 0;
  PauliString string;

  Complex factor() const;
};

PhasedPauli multiply(const PauliString& a, const PauliString& b);
PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b);

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

class WeightedPauliSum {
 public:
  WeightedPauliSum() = default;
  explicit WeightedPauliSum(std::size_t n);

  WeightedPauliSum& add(double coefficient, PauliString p);
  WeightedPauliSum& add(double coefficient, std::string_view p) { return add(coefficient, PauliString::parse(p)); }

  std::size_t spin_count() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  WeightedPauliSum scaled(double factor) const;
  friend WeightedPauliSum operator+(const WeightedPauliSum& a, const WeightedPauliSum& b);

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

template <typename Scalar>
StateVectorT<Scalar> apply_pauli(const StateVectorT<Scalar>& state, const PauliString& p) {
  const auto n = spins_for_dimension(state.size());
  if (p.size() != n) throw DimensionError("pauli string length does not match state");
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  static const std::complex<Scalar> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<Scalar> base = ipow[p.y_count() % 4];
  StateVectorT<Scalar> out(state.size());
  for (Eigen::Index b = 0; b < state.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const bool odd = (std::popcount(ub & z) & 1) != 0;
    out[static_cast<Eigen::Index>(ub ^ x)] = (odd ? -base : base) * state[b];
  }
  return out;
}

double expectation(const StateVector& state, const PauliString& p);
double expectation(const DensityMatrix& rho, const PauliString& p);

/// Entry i is the probability of exactly i spins down (bit set).
std::vector<double> hamming_histogram(const StateVector& state);

Operator pauli_matrix(const PauliString& p);
HermitianMatrix hamiltonian_matrix(const WeightedPauliSum& h);

StateVector basis_state(std::size_t n, std::uint64_t index);

/// One character per spin (spin 0 first): u/0 up, d/1 down, +/- along x,
/// r/l along +y/-y.
StateVector product_state(std::string_view label);

DensityMatrix density_matrix(const StateVector& state);

// Tolerance checks from the state invariants.
bool is_normalized(const StateVector& state, double tol = 1e-10);
bool is_density_matrix(const DensityMatrix& rho, double tol = 1e-10);

}  // namespace trotterion
