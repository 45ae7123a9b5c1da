#include "trotterion/models.hpp"

#include <cmath>

namespace trotterion {

namespace {

constexpr double kSymmetryTol = 1e-12;

// cos/sin with exact zeros at multiples of π/2
std::pair<double, double> axis_components(double phi) {
  double c = std::cos(phi);
  double s = std::sin(phi);
  if (std::abs(c) < 1e-12) c = 0.0;
  if (std::abs(s) < 1e-12) s = 0.0;
  return {c, s};
}

}  // namespace

CouplingGraph::CouplingGraph(const RealMatrix& j, double phi) : phi_(phi) {
  if (j.rows() != j.cols()) throw DimensionError("coupling matrix must be square");
  require_spin_count(static_cast<std::size_t>(j.rows()));
  if (!j.allFinite()) throw std::invalid_argument("coupling matrix has non-finite entries");
  const auto n = j.rows();
  j_ = RealMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (std::abs(j(a, b) - j(b, a)) > kSymmetryTol) {
        throw std::invalid_argument("coupling matrix is not symmetric at (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
      }
      j_(a, b) = j_(b, a) = 0.5 * (j(a, b) + j(b, a));
    }
  }
}

CouplingGraph CouplingGraph::uniform(std::size_t n, double strength, double phi) {
  RealMatrix j = RealMatrix::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), strength);
  j.diagonal().setZero();
  return CouplingGraph(j, phi);
}

double FieldSpec::plane_angle() const {
  switch (axis) {
    case Axis::X: return 0.0;
    case Axis::Y: return kPi / 2;
    case Axis::InPlane: return phi;
    case Axis::Z: break;
  }
  throw std::logic_error("z field has no in-plane angle");
}

void RampSpec::validate() const {
  if (!(theta_total > 0.0) || !std::isfinite(theta_total)) throw std::invalid_argument("ramp total phase must be positive");
  if (!std::isfinite(field) || !std::isfinite(j_start) || !std::isfinite(j_end)) {
    throw std::invalid_argument("ramp parameters must be finite");
  }
}

double RampSpec::coupling_at(double theta) const { return j_start + (j_end - j_start) * theta / theta_total; }

WeightedPauliSum RampSpec::hamiltonian_at(double theta) const { return ising2(field, coupling_at(theta)); }

WeightedPauliSum ising2(double b, double j) {
  WeightedPauliSum h(2);
  h.add(b, "ZI").add(b, "IZ").add(j, "XX");
  return h;
}

WeightedPauliSum xy2(double b, double j) {
  auto h = ising2(b, j);
  h.add(j, "YY");
  return h;
}

WeightedPauliSum xyz2(double b, double j) {
  auto h = xy2(b, j);
  h.add(j, "ZZ");
  return h;
}

LongRangeModel long_range_ising(std::size_t n, double b, double j) {
  if (n < 2) throw DimensionError("long-range model needs at least two spins");
  auto graph = CouplingGraph::uniform(n, j);
  return {coupling_graph_model(graph, FieldSpec::z(b)), graph};
}

WeightedPauliSum field_terms(std::size_t n, const FieldSpec& field) {
  WeightedPauliSum h(n);
  if (!std::isfinite(field.strength)) throw std::invalid_argument("field strength must be finite");
  if (field.axis == FieldSpec::Axis::Z) {
    for (std::size_t k = 0; k < n; ++k) h.add(field.strength, PauliString::single(n, k, Pauli::Z));
    return h;
  }
  const auto [c, s] = axis_components(field.plane_angle());
  for (std::size_t k = 0; k < n; ++k) {
    if (c != 0.0) h.add(field.strength * c, PauliString::single(n, k, Pauli::X));
    if (s != 0.0) h.add(field.strength * s, PauliString::single(n, k, Pauli::Y));
  }
  return h;
}

WeightedPauliSum coupling_graph_model(const CouplingGraph& graph, const std::optional<FieldSpec>& field) {
  const auto n = graph.spin_count();
  WeightedPauliSum h(n);
  const auto [c, s] = axis_components(graph.phi());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double j = graph(a, b);
      if (j == 0.0) continue;
      if (s == 0.0) {
        h.add(j * c * c, PauliString::pair(n, a, b, Pauli::X));
      } else if (c == 0.0) {
        h.add(j * s * s, PauliString::pair(n, a, b, Pauli::Y));
      } else {
        auto xy = PauliString::identity(n);
        xy[a] = Pauli::X;
        xy[b] = Pauli::Y;
        auto yx = PauliString::identity(n);
        yx[a] = Pauli::Y;
        yx[b] = Pauli::X;
        h.add(j * c * c, PauliString::pair(n, a, b, Pauli::X));
        h.add(j * s * s, PauliString::pair(n, a, b, Pauli::Y));
        h.add(j * c * s, xy);
        h.add(j * c * s, yx);
      }
    }
  }
  if (field) h = h + field_terms(n, *field);
  return h;
}

WeightedPauliSum many_body_model(const PauliString& p, double strength, const std::optional<FieldSpec>& field) {
  if (p.is_identity()) throw std::invalid_argument("many-body string must not be the identity");
  WeightedPauliSum h(p.size());
  h.add(strength, p);
  if (field && field->strength != 0.0) h = h + field_terms(p.size(), *field);
  return h;
}

}  // namespace trotterion
