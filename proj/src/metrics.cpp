#include "trotterion/metrics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace trotterion {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

Operator psd_sqrt(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(0.5 * (rho + rho.adjoint()));
  const Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double parity_of_diagonal(const Eigen::VectorXd& probs) {
  double q = 0.0;
  for (Eigen::Index b = 0; b < probs.size(); ++b) {
    q += (std::popcount(static_cast<std::uint64_t>(b)) % 2 ? -1.0 : 1.0) * probs[b];
  }
  return q;
}

}  // namespace

double state_fidelity(const StateVector& a, const StateVector& b) {
  require_same_dim(a.size(), b.size());
  return std::norm(a.dot(b));
}

double state_fidelity(const StateVector& a, const DensityMatrix& b) {
  require_same_dim(a.size(), b.rows());
  return clamp01(a.dot(b * a).real());
}

double state_fidelity(const DensityMatrix& a, const StateVector& b) { return state_fidelity(b, a); }

double state_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.rows(), b.rows());
  const Operator sa = psd_sqrt(a);
  const Operator m = sa * b * sa;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return clamp01(t * t);
}

double process_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_dim(u.rows(), v.rows());
  const auto d = u.rows();
  for (const auto* m : {&u, &v}) {
    if (m->rows() != m->cols()) throw DimensionError("process matrices must be square");
    const double err = ((*m).adjoint() * (*m) - Operator::Identity(d, d)).cwiseAbs().maxCoeff();
    if (err > 1e-6) throw std::invalid_argument("input is not unitary (deviation " + std::to_string(err) + ")");
  }
  return std::norm((u.adjoint() * v).trace()) / static_cast<double>(d * d);
}

double tangle2(const StateVector& psi) {
  if (psi.size() != 4) throw DimensionError("tangle is defined for two spins");
  const Complex c = 2.0 * (psi[0] * psi[3] - psi[1] * psi[2]);
  return std::norm(c);
}

double tangle2(const DensityMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("tangle is defined for two spins");
  const Operator yy = pauli_matrix(PauliString::parse("YY"));
  const Operator tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Operator> es(rho * tilde, false);
  std::vector<double> l;
  for (Eigen::Index k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[k].real())));
  std::sort(l.begin(), l.end(), std::greater<>());
  const double c = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
  return c * c;
}

bool complementary_check(const std::vector<StateVector>& a, const std::vector<StateVector>& b, double tol) {
  if (a.size() != b.size() || a.empty()) return false;
  const auto dim = a.front().size();
  const double target = 1.0 / static_cast<double>(dim);
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x.size() != dim || y.size() != dim) throw DimensionError("state sets have mixed dimensions");
      if (std::abs(std::norm(x.dot(y)) - target) > tol) return false;
    }
  }
  return true;
}

double TruthTable::mean_fidelity() const {
  if (rows.empty()) throw std::invalid_argument("empty truth table");
  double s = 0.0;
  for (const auto& r : rows) s += r.fidelity;
  return s / static_cast<double>(rows.size());
}

double TruthTable::mean_uncertainty() const {
  if (rows.empty()) throw std::invalid_argument("empty truth table");
  double s = 0.0;
  for (const auto& r : rows) s += r.uncertainty * r.uncertainty;
  return std::sqrt(s) / static_cast<double>(rows.size());
}

TruthTable truth_table(const GateSequence& program, const std::vector<LabelledState>& basis,
                       const UnitaryMatrix& reference, std::string basis_label) {
  const auto dim = dimension_of(program.spin_count());
  require_same_dim(dim, reference.rows());
  if (static_cast<Eigen::Index>(basis.size()) != dim) throw std::invalid_argument("basis set is not complete");
  TruthTable t;
  t.basis_label = std::move(basis_label);
  for (const auto& in : basis) {
    const StateVector ideal = reference * in.state;
    const StateVector out = apply_sequence(in.state, program);
    t.rows.push_back({in.label, state_fidelity(ideal, out), 0.0});
  }
  return t;
}

FidelityBound hofmann_bounds(double f1, double f2, double sigma1, double sigma2) {
  for (double f : {f1, f2}) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("truth-table fidelities must lie in [0, 1]");
  }
  FidelityBound b;
  b.lower = f1 + f2 - 1.0;
  b.upper = std::min(f1, f2);
  b.lower_uncertainty = std::hypot(sigma1, sigma2);
  b.upper_uncertainty = f1 <= f2 ? sigma1 : sigma2;
  return b;
}

void GhzMeasurementRecord::validate() const {
  if (parities.empty()) throw std::invalid_argument("GHZ record has no parities");
  if (signs.size() != parities.size()) throw std::invalid_argument("GHZ record needs one sign per parity");
  for (double p : {p_zero, p_one}) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("GHZ populations must lie in [0, 1]");
  }
  for (double q : parities) {
    if (q < -1.0 || q > 1.0) throw std::invalid_argument("GHZ parities must lie in [-1, 1]");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("GHZ signs must be +1 or -1");
  }
}

double ghz_fidelity(const GhzMeasurementRecord& r) {
  r.validate();
  const double c = std::cos(r.theta);
  const double s = std::sin(r.theta);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.parities.size(); ++i) sum += r.signs[i] * r.parities[i];
  return c * c * r.p_zero + s * s * r.p_one + c * s / static_cast<double>(r.parities.size()) * sum;
}

double ghz_parity_observable(const StateVector& psi, double phi) {
  const StateVector rotated = apply_gate(psi, GateOp::o3(kPi / 4, phi));
  return parity_of_diagonal(rotated.cwiseAbs2());
}

double ghz_parity_observable(const DensityMatrix& rho, double phi) {
  const auto n = spins_for_dimension(rho.rows());
  const UnitaryMatrix r = gate_unitary(GateOp::o3(kPi / 4, phi), n);
  const DensityMatrix out = r * rho * r.adjoint();
  return parity_of_diagonal(out.diagonal().real());
}

std::vector<double> ghz_analysis_angles(std::size_t n, double chi) {
  std::vector<double> phi;
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) phi.push_back(chi / nn - kPi / 2 + static_cast<double>(i) * kPi / nn);
  return phi;
}

std::vector<int> alternating_signs(std::size_t n) {
  std::vector<int> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(i % 2 ? -1 : 1);
  return s;
}

GhzMeasurementRecord ghz_record_from_state(const StateVector& psi, double theta, double chi) {
  const auto n = spins_for_dimension(psi.size());
  GhzMeasurementRecord r;
  r.theta = theta;
  r.chi = chi;
  r.p_zero = std::norm(psi[0]);
  r.p_one = std::norm(psi[psi.size() - 1]);
  for (double phi : ghz_analysis_angles(n, chi)) r.parities.push_back(std::clamp(ghz_parity_observable(psi, phi), -1.0, 1.0));
  r.signs = alternating_signs(n);
  return r;
}

StateVector ghz_target(std::size_t n, double theta, double chi) {
  StateVector s = basis_state(n, 0) * std::cos(theta);
  s[s.size() - 1] = std::polar(std::sin(theta), chi);
  return s;
}

}  // namespace trotterion
