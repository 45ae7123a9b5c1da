#pragma once

#include "trotterion/pauli.hpp"

#include <optional>

namespace trotterion {

using RealMatrix = Eigen::MatrixXd;

/// Pairwise σφσφ couplings. Only the upper triangle is meaningful; the
/// stored matrix is always symmetric with a zero diagonal.
class CouplingGraph {
 public:
  CouplingGraph() = default;
  CouplingGraph(const RealMatrix& j, double phi = 0.0);

  static CouplingGraph uniform(std::size_t n, double strength, double phi = 0.0);

  std::size_t spin_count() const { return static_cast<std::size_t>(j_.rows()); }
  const RealMatrix& matrix() const { return j_; }
  double operator()(std::size_t i, std::size_t k) const { return j_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)); }
  double phi() const { return phi_; }
  bool is_zero() const { return j_.isZero(0.0); }

 private:
  RealMatrix j_;
  double phi_ = 0.0;
};

struct FieldSpec {
  enum class Axis { X, Y, Z, InPlane };
  Axis axis = Axis::Z;
  double phi = 0.0;  // InPlane only: cos φ X + sin φ Y
  double strength = 0.0;

  static FieldSpec x(double b) { return {Axis::X, 0.0, b}; }
  static FieldSpec y(double b) { return {Axis::Y, 0.0, b}; }
  static FieldSpec z(double b) { return {Axis::Z, 0.0, b}; }
  static FieldSpec in_plane(double b, double phi) { return {Axis::InPlane, phi, b}; }

  // In-plane axis angle for X/Y/InPlane fields.
  double plane_angle() const;
};

/// Two-spin J(θ) ramp, linear between the endpoints over θ_t.
struct RampSpec {
  double field = 1.0;
  double j_start = 0.0;
  double j_end = 4.0;
  double theta_total = kPi / 2;

  void validate() const;
  double coupling_at(double theta) const;
  WeightedPauliSum hamiltonian_at(double theta) const;
};

struct LongRangeModel {
  WeightedPauliSum hamiltonian;
  CouplingGraph graph;
};

/// B(Z1+Z2) + J X1X2
WeightedPauliSum ising2(double b, double j);
WeightedPauliSum xy2(double b, double j);
WeightedPauliSum xyz2(double b, double j);

LongRangeModel long_range_ising(std::size_t n, double b, double j);

/// Σ_{i<j} J_ij σφσφ plus an optional uniform field.
WeightedPauliSum coupling_graph_model(const CouplingGraph& graph, const std::optional<FieldSpec>& field = std::nullopt);

WeightedPauliSum field_terms(std::size_t n, const FieldSpec& field);

WeightedPauliSum many_body_model(const PauliString& p, double strength,
                                 const std::optional<FieldSpec>& field = std::nullopt);

}  // namespace trotterion
