#pragma once

#include "trotterion/pauli.hpp"

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trotterion {

enum class GateKind { O1, O2, O3, O4 };

std::string gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

/// O1(θ,j) = exp(-iθ Z_j)            O2(θ) = exp(-iθ Σ Z)
/// O3(θ,φ) = exp(-iθ Σ σφ)           O4(θ,φ) = exp(-iθ Σ_{i<j} σφ σφ)
/// with σφ = cos φ X + sin φ Y.
struct GateOp {
  GateKind kind = GateKind::O2;
  double theta = 0.0;
  double phi = 0.0;
  std::optional<std::size_t> target;

  static GateOp o1(double theta, std::size_t target);
  static GateOp o2(double theta);
  static GateOp o3(double theta, double phi);
  static GateOp o4(double theta, double phi);

  // Throws if the invariants of the kind are violated for n spins.
  void validate(std::size_t n) const;

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

class GateSequence {
 public:
  GateSequence() = default;
  explicit GateSequence(std::size_t n);
  GateSequence(std::size_t n, std::vector<GateOp> gates);

  std::size_t spin_count() const { return n_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const std::vector<GateOp>& gates() const { return gates_; }
  const GateOp& operator[](std::size_t k) const { return gates_[k]; }
  auto begin() const { return gates_.begin(); }
  auto end() const { return gates_.end(); }

  GateSequence& append(const GateOp& g);
  GateSequence& append(const GateSequence& other);
  GateSequence prefix(std::size_t count) const;

 private:
  std::size_t n_ = 0;
  std::vector<GateOp> gates_;
};

namespace detail {

template <typename Scalar>
using Mat2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
void apply_single_spin(StateVectorT<Scalar>& psi, std::size_t spin, const Mat2<Scalar>& u) {
  const Eigen::Index stride = Eigen::Index{1} << spin;
  const Eigen::Index dim = psi.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index k = base; k < base + stride; ++k) {
      const auto a = psi[k];
      const auto b = psi[k + stride];
      psi[k] = u(0, 0) * a + u(0, 1) * b;
      psi[k + stride] = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

template <typename Scalar>
Mat2<Scalar> sigma_phi_rotation(Scalar theta, Scalar phi) {
  using C = std::complex<Scalar>;
  const Scalar c = std::cos(theta);
  const Scalar s = std::sin(theta);
  Mat2<Scalar> u;
  u << C(c, 0), C(0, -s) * std::polar(Scalar(1), -phi),
       C(0, -s) * std::polar(Scalar(1), phi), C(c, 0);
  return u;
}

}  // namespace detail

/// In-place exp(-iθG)|ψ>. O4 is applied in the product σφ eigenbasis, where
/// Σ_{i<j} σφσφ = (m² - n)/2 with m the summed eigenvalue.
template <typename Scalar>
void apply_gate_inplace(StateVectorT<Scalar>& psi, const GateOp& g) {
  using C = std::complex<Scalar>;
  const std::size_t n = spins_for_dimension(psi.size());
  g.validate(n);
  const Scalar theta = static_cast<Scalar>(g.theta);
  const Scalar phi = static_cast<Scalar>(g.phi);
  const Eigen::Index dim = psi.size();

  switch (g.kind) {
    case GateKind::O1: {
      const auto bit = std::uint64_t{1} << *g.target;
      const C up = std::polar(Scalar(1), -theta);
      const C down = std::conj(up);
      for (Eigen::Index b = 0; b < dim; ++b) psi[b] *= (static_cast<std::uint64_t>(b) & bit) ? down : up;
      return;
    }
    case GateKind::O2: {
      std::vector<C> phase(n + 1);
      for (std::size_t d = 0; d <= n; ++d) {
        phase[d] = std::polar(Scalar(1), -theta * static_cast<Scalar>(static_cast<int>(n) - 2 * static_cast<int>(d)));
      }
      for (Eigen::Index b = 0; b < dim; ++b) psi[b] *= phase[std::popcount(static_cast<std::uint64_t>(b))];
      return;
    }
    case GateKind::O3: {
      const auto u = detail::sigma_phi_rotation(theta, phi);
      for (std::size_t k = 0; k < n; ++k) detail::apply_single_spin(psi, k, u);
      return;
    }
    case GateKind::O4: {
      const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
      const C e = std::polar(Scalar(1), phi);
      // columns of w are the +1 / -1 eigenvectors of σφ
      detail::Mat2<Scalar> w;
      w << C(r, 0), C(r, 0), r * e, -r * e;
      const detail::Mat2<Scalar> w_adj = w.adjoint();
      for (std::size_t k = 0; k < n; ++k) detail::apply_single_spin(psi, k, w_adj);
      std::vector<C> phase(n + 1);
      for (std::size_t d = 0; d <= n; ++d) {
        const Scalar m = static_cast<Scalar>(static_cast<int>(n) - 2 * static_cast<int>(d));
        phase[d] = std::polar(Scalar(1), -theta * (m * m - static_cast<Scalar>(n)) / Scalar(2));
      }
      for (Eigen::Index b = 0; b < dim; ++b) psi[b] *= phase[std::popcount(static_cast<std::uint64_t>(b))];
      for (std::size_t k = 0; k < n; ++k) detail::apply_single_spin(psi, k, w);
      return;
    }
  }
}

template <typename Scalar>
StateVectorT<Scalar> apply_gate(StateVectorT<Scalar> psi, const GateOp& g) {
  apply_gate_inplace(psi, g);
  return psi;
}

template <typename Scalar>
void apply_sequence_inplace(StateVectorT<Scalar>& psi, const GateSequence& seq) {
  if (spins_for_dimension(psi.size()) != seq.spin_count()) throw DimensionError("sequence size does not match state");
  for (const auto& g : seq) apply_gate_inplace(psi, g);
}

template <typename Scalar>
StateVectorT<Scalar> apply_sequence(StateVectorT<Scalar> psi, const GateSequence& seq) {
  apply_sequence_inplace(psi, seq);
  return psi;
}

UnitaryMatrix gate_unitary(const GateOp& g, std::size_t n);
UnitaryMatrix sequence_unitary(const GateSequence& seq);

/// Per-kind duration fixed_us + per_radian_us * |θ|.
struct DurationModel {
  struct Entry {
    double fixed_us = 0.0;
    double per_radian_us = 0.0;
  };
  std::map<GateKind, Entry> entries;

  // O2(π/16) = 10 µs, O3(π/4) = 5 µs, O4 and O1 ≈ 30 µs per pulse.
  static DurationModel defaults();
  double duration(const GateOp& g) const;
};

struct SequenceStats {
  std::size_t gate_count = 0;
  double wall_time_us = 0.0;
  std::array<std::size_t, 4> per_kind{};
};

SequenceStats sequence_stats(const GateSequence& seq, const DurationModel& model = DurationModel::defaults());

/// Line-oriented form, e.g. "O4 theta=0.19634954084936207 phi=0.0".
std::string to_text(const GateSequence& seq);
GateSequence sequence_from_text(std::string_view text, std::optional<std::size_t> n = std::nullopt);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace trotterion
