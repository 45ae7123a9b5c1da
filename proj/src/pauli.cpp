#include "trotterion/pauli.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace trotterion {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '_': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: break;
  }
  throw std::invalid_argument(std::string("not a Pauli character: '") + c + "'");
}

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) { require_spin_count(ops_.size()); }

PauliString PauliString::identity(std::size_t n) { return PauliString(std::vector<Pauli>(n, Pauli::I)); }

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> ops;
  ops.reserve(text.size());
  for (char c : text) ops.push_back(pauli_from_char(c));
  return PauliString(std::move(ops));
}

PauliString PauliString::single(std::size_t n, std::size_t spin, Pauli p) {
  if (spin >= n) throw DimensionError("spin index out of range");
  auto s = identity(n);
  s.ops_[spin] = p;
  return s;
}

PauliString PauliString::pair(std::size_t n, std::size_t i, std::size_t j, Pauli p) {
  if (i >= n || j >= n || i == j) throw DimensionError("invalid spin pair");
  auto s = identity(n);
  s.ops_[i] = p;
  s.ops_[j] = p;
  return s;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (auto p : ops_) w += p != Pauli::I;
  return w;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(ops_.size());
  for (auto p : ops_) s.push_back(pauli_char(p));
  return s;
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    if (ops_[k] == Pauli::X || ops_[k] == Pauli::Y) m |= std::uint64_t{1} << k;
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    if (ops_[k] == Pauli::Z || ops_[k] == Pauli::Y) m |= std::uint64_t{1} << k;
  }
  return m;
}

std::size_t PauliString::y_count() const {
  std::size_t c = 0;
  for (auto p : ops_) c += p == Pauli::Y;
  return c;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.size() != size()) throw DimensionError("pauli string length mismatch");
  const auto overlap = std::popcount(x_mask() & other.z_mask()) + std::popcount(z_mask() & other.x_mask());
  return overlap % 2 == 0;
}

Complex PhasedPauli::factor() const {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((phase % 4) + 4) % 4];
}

PhasedPauli multiply(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw DimensionError("pauli string length mismatch");
  std::vector<Pauli> out(a.size());
  int phase = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int x = static_cast<int>(a[k]);
    const int y = static_cast<int>(b[k]);
    if (x == 0) {
      out[k] = b[k];
    } else if (y == 0) {
      out[k] = a[k];
    } else if (x == y) {
      out[k] = Pauli::I;
    } else {
      out[k] = static_cast<Pauli>(6 - x - y);
      const bool cyclic = (x % 3) + 1 == y;
      phase += cyclic ? 1 : 3;
    }
  }
  return {phase % 4, PauliString(std::move(out))};
}

PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b) {
  auto r = multiply(a.string, b.string);
  r.phase = (r.phase + a.phase + b.phase) % 4;
  return r;
}

WeightedPauliSum::WeightedPauliSum(std::size_t n) : n_(n) { require_spin_count(n); }

WeightedPauliSum& WeightedPauliSum::add(double coefficient, PauliString p) {
  if (p.size() != n_) throw DimensionError("term length does not match model spin count");
  if (!std::isfinite(coefficient)) throw std::invalid_argument("non-finite coefficient");
  terms_.push_back({coefficient, std::move(p)});
  return *this;
}

WeightedPauliSum WeightedPauliSum::scaled(double factor) const {
  WeightedPauliSum out(*this);
  for (auto& t : out.terms_) t.coefficient *= factor;
  return out;
}

WeightedPauliSum operator+(const WeightedPauliSum& a, const WeightedPauliSum& b) {
  if (a.n_ != b.n_) throw DimensionError("cannot add models of different size");
  WeightedPauliSum out(a);
  for (const auto& t : b.terms_) out.terms_.push_back(t);
  return out;
}

double expectation(const StateVector& state, const PauliString& p) {
  return state.dot(apply_pauli(state, p)).real();
}

double expectation(const DensityMatrix& rho, const PauliString& p) {
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix must be square");
  return (pauli_matrix(p) * rho).trace().real();
}

std::vector<double> hamming_histogram(const StateVector& state) {
  const auto n = spins_for_dimension(state.size());
  std::vector<double> hist(n + 1, 0.0);
  for (Eigen::Index b = 0; b < state.size(); ++b) {
    hist[std::popcount(static_cast<std::uint64_t>(b))] += std::norm(state[b]);
  }
  return hist;
}

Operator pauli_matrix(const PauliString& p) {
  const auto dim = dimension_of(p.size());
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const Complex base = PhasedPauli{static_cast<int>(p.y_count() % 4), {}}.factor();
  Operator m = Operator::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const bool odd = (std::popcount(ub & z) & 1) != 0;
    m(static_cast<Eigen::Index>(ub ^ x), b) = odd ? -base : base;
  }
  return m;
}

HermitianMatrix hamiltonian_matrix(const WeightedPauliSum& h) {
  const auto n = h.spin_count();
  require_spin_count(n);
  const auto dim = dimension_of(n);
  HermitianMatrix m = HermitianMatrix::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const Complex base = t.coefficient * PhasedPauli{static_cast<int>(t.string.y_count() % 4), {}}.factor();
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const bool odd = (std::popcount(ub & z) & 1) != 0;
      m(static_cast<Eigen::Index>(ub ^ x), b) += odd ? -base : base;
    }
  }
  return m;
}

StateVector basis_state(std::size_t n, std::uint64_t index) {
  require_spin_count(n);
  const auto dim = dimension_of(n);
  if (index >= static_cast<std::uint64_t>(dim)) throw DimensionError("basis index out of range");
  StateVector s = StateVector::Zero(dim);
  s[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

StateVector product_state(std::string_view label) {
  require_spin_count(label.size());
  const double r = 1.0 / std::sqrt(2.0);
  StateVector s = StateVector::Ones(1);
  for (std::size_t k = 0; k < label.size(); ++k) {
    Eigen::Vector2cd q;
    switch (label[k]) {
      case 'u': case '0': q << 1, 0; break;
      case 'd': case '1': q << 0, 1; break;
      case '+': q << r, r; break;
      case '-': q << r, -r; break;
      case 'r': q << r, Complex(0, r); break;
      case 'l': q << r, Complex(0, -r); break;
      default: throw std::invalid_argument(std::string("unknown state label character '") + label[k] + "'");
    }
    // spin k is bit k: new factor goes on the high side
    StateVector next(s.size() * 2);
    next.head(s.size()) = q[0] * s;
    next.tail(s.size()) = q[1] * s;
    s = std::move(next);
  }
  return s;
}

DensityMatrix density_matrix(const StateVector& state) { return state * state.adjoint(); }

bool is_normalized(const StateVector& state, double tol) { return std::abs(state.squaredNorm() - 1.0) <= tol; }

bool is_density_matrix(const DensityMatrix& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-8;
}

}  // namespace trotterion
