#include "trotterion/tomography.hpp"

#include "trotterion/metrics.hpp"
#include "trotterion/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace trotterion {

namespace {

std::vector<Pauli> pauli_digits(std::size_t m, std::size_t n) {
  std::vector<Pauli> ops(n);
  for (std::size_t j = n; j-- > 0;) {
    ops[j] = static_cast<Pauli>(m % 4);
    m /= 4;
  }
  return ops;
}

std::vector<PauliString> pauli_basis(std::size_t n) {
  std::vector<PauliString> basis;
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t m = 0; m < count; ++m) basis.emplace_back(pauli_digits(m, n));
  return basis;
}

Eigen::VectorXcd vec(const Operator& m) { return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()); }

// Columns vec(P_m)/sqrt(d); unitary.
Operator pauli_transfer(const std::vector<PauliString>& basis, Eigen::Index d) {
  Operator t(d * d, d * d);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    t.col(static_cast<Eigen::Index>(m)) = vec(pauli_matrix(basis[m])) / std::sqrt(static_cast<double>(d));
  }
  return t;
}

// Per-spin unitary taking the measurement eigenbasis to the computational one.
Eigen::Matrix2cd measurement_rotation(Pauli p) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << r, r, r, -r;
  if (p == Pauli::X) return h;
  if (p == Pauli::Y) {
    Eigen::Matrix2cd sdg;
    sdg << 1, 0, 0, Complex(0, -1);
    return h * sdg;
  }
  return Eigen::Matrix2cd::Identity();
}

// Pauli expectations of a pure output state, exactly or from finite samples.
std::vector<double> pauli_expectations(const StateVector& psi, const std::vector<PauliString>& basis, std::size_t n,
                                       const TomographyOptions& options, SplitMix64* rng) {
  std::vector<double> exp(basis.size(), 0.0);
  if (!options.shots) {
    for (std::size_t m = 0; m < basis.size(); ++m) exp[m] = expectation(psi, basis[m]);
    return exp;
  }
  std::vector<double> sums(basis.size(), 0.0);
  std::vector<std::size_t> settings_used(basis.size(), 0);
  const std::size_t n_settings = static_cast<std::size_t>(std::pow(3, n));
  const auto dim = psi.size();
  for (std::size_t s = 0; s < n_settings; ++s) {
    std::vector<Pauli> setting(n);
    std::size_t code = s;
    for (std::size_t j = 0; j < n; ++j) {
      setting[j] = static_cast<Pauli>(1 + code % 3);
      code /= 3;
    }
    StateVector rotated = psi;
    for (std::size_t j = 0; j < n; ++j) {
      detail::apply_single_spin<double>(rotated, j, measurement_rotation(setting[j]));
    }
    const Eigen::VectorXd probs = rotated.cwiseAbs2();
    std::vector<std::size_t> counts(static_cast<std::size_t>(dim), 0);
    for (std::size_t shot = 0; shot < *options.shots; ++shot) {
      double u = rng->uniform();
      Eigen::Index b = 0;
      while (b < dim - 1 && u >= probs[b]) u -= probs[b++];
      ++counts[static_cast<std::size_t>(b)];
    }
    for (std::size_t m = 0; m < basis.size(); ++m) {
      bool compatible = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (basis[m][j] != Pauli::I && basis[m][j] != setting[j]) compatible = false;
      }
      if (!compatible) continue;
      const std::uint64_t support = basis[m].x_mask() | basis[m].z_mask();
      double acc = 0.0;
      for (Eigen::Index b = 0; b < dim; ++b) {
        const bool odd = std::popcount(static_cast<std::uint64_t>(b) & support) % 2;
        acc += (odd ? -1.0 : 1.0) * static_cast<double>(counts[static_cast<std::size_t>(b)]);
      }
      sums[m] += acc / static_cast<double>(*options.shots);
      ++settings_used[m];
    }
  }
  for (std::size_t m = 0; m < basis.size(); ++m) exp[m] = sums[m] / static_cast<double>(settings_used[m]);
  return exp;
}

}  // namespace

std::string ProcessMatrix::basis_label(std::size_t m) const {
  std::string s;
  for (auto p : pauli_digits(m, n)) s.push_back(pauli_char(p));
  return s;
}

ProcessMatrix chi_of_unitary(const UnitaryMatrix& u) {
  const auto n = spins_for_dimension(u.rows());
  const auto basis = pauli_basis(n);
  const double d = static_cast<double>(u.rows());
  Eigen::VectorXcd coeff(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t m = 0; m < basis.size(); ++m) {
    coeff[static_cast<Eigen::Index>(m)] = (pauli_matrix(basis[m]) * u).trace() / d;
  }
  return {n, coeff * coeff.adjoint()};
}

ProcessMatrix simulate_qpt(const GateSequence& program, const TomographyOptions& options) {
  const auto n = program.spin_count();
  if (n > 2) throw std::invalid_argument("process tomography is limited to two spins");
  if (options.shots && *options.shots == 0) throw std::invalid_argument("tomography needs at least one shot per setting");
  const auto d = dimension_of(n);
  const auto d2 = d * d;
  const auto basis = pauli_basis(n);
  SplitMix64 rng = SplitMix64::substream(options.seed, 0x51);

  static const char kInputs[4] = {'0', '1', '+', 'r'};
  Operator r_in(d2, d2);
  Operator s_out(d2, d2);
  for (Eigen::Index k = 0; k < d2; ++k) {
    std::string label(n, '0');
    auto code = static_cast<std::size_t>(k);
    for (std::size_t j = 0; j < n; ++j) {
      label[j] = kInputs[code % 4];
      code /= 4;
    }
    const StateVector in = product_state(label);
    const StateVector out = apply_sequence(in, program);
    const auto exp = pauli_expectations(out, basis, n, options, &rng);
    Operator rho = Operator::Zero(d, d);
    for (std::size_t m = 0; m < basis.size(); ++m) rho += exp[m] * pauli_matrix(basis[m]);
    rho /= static_cast<double>(d);
    r_in.col(k) = vec(density_matrix(in));
    s_out.col(k) = vec(rho);
  }
  Eigen::FullPivLU<Operator> lu(r_in);
  if (lu.rank() < d2) throw std::invalid_argument("input states are not informationally complete");
  const Operator superop = s_out * lu.inverse();

  ProcessMatrix raw{n, Operator::Zero(d2, d2)};
  const double norm = static_cast<double>(d2);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    const auto xm = basis[m].x_mask();
    const Operator pm = pauli_matrix(basis[m]);
    for (std::size_t nn = 0; nn < basis.size(); ++nn) {
      const auto xn = basis[nn].x_mask();
      const Operator pn = pauli_matrix(basis[nn]);
      Complex acc = 0.0;
      for (Eigen::Index c = 0; c < d; ++c) {
        const auto a = static_cast<Eigen::Index>(static_cast<std::uint64_t>(c) ^ xm);
        for (Eigen::Index e = 0; e < d; ++e) {
          const auto b = static_cast<Eigen::Index>(static_cast<std::uint64_t>(e) ^ xn);
          acc += pn(b, e) * std::conj(pm(a, c)) * superop(a + d * b, c + d * e);
        }
      }
      raw.chi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(nn)) = acc / norm;
    }
  }
  return project_cptp(raw, options.projection_iterations);
}

ProcessMatrix project_cptp(const ProcessMatrix& raw, std::size_t iterations) {
  const auto d = dimension_of(raw.n);
  const auto basis = pauli_basis(raw.n);
  const Operator t = pauli_transfer(basis, d);
  const double dd = static_cast<double>(d);
  Operator x = dd * t * (0.5 * (raw.chi + raw.chi.adjoint())) * t.adjoint();

  auto project_psd = [](const Operator& m) {
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (m + m.adjoint()));
    const Eigen::VectorXd l = es.eigenvalues().cwiseMax(0.0);
    return Operator(es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint());
  };
  // Choi index a + d·b with a the output index: enforce Σ_a J(a+db, a+de) = δ_be
  auto project_tp = [d, dd](Operator m) {
    Operator partial = Operator::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
      for (Eigen::Index e = 0; e < d; ++e) {
        for (Eigen::Index a = 0; a < d; ++a) partial(b, e) += m(a + d * b, a + d * e);
      }
    }
    partial -= Operator::Identity(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
      for (Eigen::Index e = 0; e < d; ++e) {
        for (Eigen::Index a = 0; a < d; ++a) m(a + d * b, a + d * e) -= partial(b, e) / dd;
      }
    }
    return m;
  };

  Operator p = Operator::Zero(x.rows(), x.cols());
  Operator q = p;
  for (std::size_t it = 0; it < iterations; ++it) {
    const Operator y = project_psd(x + p);
    p = x + p - y;
    const Operator next = project_tp(y + q);
    q = y + q - next;
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = next;
    if (change < 1e-13) break;
  }
  ProcessMatrix out{raw.n, t.adjoint() * x * t / dd};
  out.chi = 0.5 * (out.chi + out.chi.adjoint()).eval();
  return out;
}

double process_fidelity(const ProcessMatrix& chi, const UnitaryMatrix& u) {
  const auto ref = chi_of_unitary(u);
  if (ref.chi.rows() != chi.chi.rows()) throw DimensionError("process matrix and unitary differ in size");
  return std::clamp((chi.chi * ref.chi).trace().real(), 0.0, 1.0);
}

double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b) { return state_fidelity(a.chi, b.chi); }

double tp_residual(const ProcessMatrix& chi) {
  const auto d = dimension_of(chi.n);
  const auto basis = pauli_basis(chi.n);
  std::vector<Operator> mats;
  for (const auto& p : basis) mats.push_back(pauli_matrix(p));
  Operator acc = Operator::Zero(d, d);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    for (std::size_t nn = 0; nn < basis.size(); ++nn) {
      acc += chi.chi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(nn)) * mats[nn].adjoint() * mats[m];
    }
  }
  return (acc - Operator::Identity(d, d)).cwiseAbs().maxCoeff();
}

}  // namespace trotterion
