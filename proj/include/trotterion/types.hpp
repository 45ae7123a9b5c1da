#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trotterion {

template <typename Scalar>
using StateVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using OperatorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using StateVector = StateVectorT<double>;
using Operator = OperatorT<double>;
using UnitaryMatrix = Operator;
using HermitianMatrix = Operator;
using DensityMatrix = Operator;

inline constexpr double kPi = std::numbers::pi;
inline constexpr std::size_t kMaxSpins = 12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws DimensionError unless 1 <= n <= kMaxSpins.
void require_spin_count(std::size_t n);

inline Eigen::Index dimension_of(std::size_t n) { return Eigen::Index{1} << n; }

// Inverse of dimension_of; throws DimensionError if dim is not 2^n.
std::size_t spins_for_dimension(Eigen::Index dim);

}  // namespace trotterion
