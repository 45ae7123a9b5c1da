#include "dense_oracle.hpp"

#include "trotterion/gates.hpp"

#include <gtest/gtest.h>

using namespace trotterion;

namespace {

dense::Mat reference(const GateOp& g, std::size_t n) {
  switch (g.kind) {
    case GateKind::O1: return dense::o1(g.theta, *g.target, n);
    case GateKind::O2: return dense::o2(g.theta, n);
    case GateKind::O3: return dense::o3(g.theta, g.phi, n);
    case GateKind::O4: return dense::o4(g.theta, g.phi, n);
  }
  return {};
}

}  // namespace

TEST(Gates, EveryKindMatchesMatrixExponential) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(-3.5, 3.5);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const double th = angle(rng);
      const double ph = angle(rng);
      std::vector<GateOp> gates = {GateOp::o1(th, static_cast<std::size_t>(trial) % n), GateOp::o2(th),
                                   GateOp::o3(th, ph), GateOp::o4(th, ph)};
      for (const auto& g : gates) {
        const auto u = gate_unitary(g, n);
        EXPECT_LT((u - reference(g, n)).norm(), 1e-11) << gate_kind_name(g.kind) << " n=" << n;
        EXPECT_LT((u.adjoint() * u - dense::Mat::Identity(u.rows(), u.cols())).norm(), 1e-12);
      }
    }
  }
}

TEST(Gates, StateKernelAgreesWithUnitary) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = dense::random_state(3, rng);
    const auto g = GateOp::o4(0.3 + 0.1 * trial, 0.2 * trial);
    EXPECT_LT((apply_gate(psi, g) - dense::o4(g.theta, g.phi, 3) * psi).norm(), 1e-12);
  }
}

TEST(Gates, SinglePrecisionKernelTracksDouble) {
  std::mt19937_64 rng(23);
  const StateVector psi = dense::random_state(4, rng);
  const StateVectorT<float> psi_f = psi.cast<std::complex<float>>();
  GateSequence seq(4);
  seq.append(GateOp::o4(0.4, 0.1)).append(GateOp::o1(1.1, 2)).append(GateOp::o3(0.7, 2.0)).append(GateOp::o2(0.3));
  const auto a = apply_sequence(psi, seq);
  const auto b = apply_sequence(psi_f, seq);
  EXPECT_LT((a - b.cast<std::complex<double>>()).norm(), 1e-5);
}

TEST(Gates, FullMolmerSorensenIsIdentityOrParityUpToPhase) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto u = gate_unitary(GateOp::o4(dense::pi / 2, 0.4), n);
    dense::Mat expect = dense::Mat::Identity(u.rows(), u.cols());
    if (n % 2 == 0) {
      expect = dense::Mat::Identity(1, 1);
      for (std::size_t k = 0; k < n; ++k) expect = Eigen::kroneckerProduct(dense::sigma_phi(0.4), expect).eval();
    }
    EXPECT_LT(dense::phase_distance(u, expect), 1e-10) << "n=" << n;
  }
}

TEST(Gates, SequenceUnitaryAppliesFirstGateFirst) {
  GateSequence seq(2);
  seq.append(GateOp::o3(0.3, 0.0)).append(GateOp::o1(0.9, 1));
  const dense::Mat expect = dense::o1(0.9, 1, 2) * dense::o3(0.3, 0.0, 2);
  EXPECT_LT((sequence_unitary(seq) - expect).norm(), 1e-12);
  EXPECT_EQ(seq.prefix(1).size(), 1u);
  EXPECT_THROW(seq.prefix(3), std::out_of_range);
}

TEST(Gates, ValidationRejectsBadOperations) {
  EXPECT_THROW(GateOp::o1(0.1, 3).validate(3), DimensionError);
  GateOp missing = GateOp::o1(0.1, 0);
  missing.target.reset();
  EXPECT_THROW(missing.validate(2), std::invalid_argument);
  EXPECT_THROW(GateOp::o2(std::nan("")).validate(2), std::invalid_argument);
  GateSequence seq(2);
  EXPECT_THROW(seq.append(GateOp::o1(0.1, 2)), DimensionError);
  StateVector psi = StateVector::Zero(8);
  psi[0] = 1.0;
  EXPECT_THROW(apply_sequence(psi, seq), DimensionError);
}

TEST(Gates, TextFormRoundTripsExactly) {
  GateSequence seq(3);
  seq.append(GateOp::o4(dense::pi / (2 * std::sqrt(2.0)), 0.0))
      .append(GateOp::o1(0.1, 2))
      .append(GateOp::o3(1e-17, dense::pi))
      .append(GateOp::o2(-2.5));
  const auto text = to_text(seq);
  EXPECT_EQ(text.rfind("# spins=3", 0), 0u);
  const auto back = sequence_from_text(text);
  ASSERT_EQ(back.size(), seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) EXPECT_EQ(back[k], seq[k]);
  EXPECT_EQ(to_text(back), text);
  EXPECT_THROW(sequence_from_text("# spins=2\nO5 theta=1\n"), std::invalid_argument);
  EXPECT_THROW(sequence_from_text("O2 theta=1\n"), std::invalid_argument);
}

TEST(Gates, DurationDefaults) {
  const auto m = DurationModel::defaults();
  EXPECT_NEAR(m.duration(GateOp::o2(dense::pi / 16)), 10.0, 1e-12);
  EXPECT_NEAR(m.duration(GateOp::o4(dense::pi / 16, 0.0)), 30.0, 1e-12);
  EXPECT_NEAR(m.duration(GateOp::o3(dense::pi / 4, 0.0)), 5.0, 1e-12);
  EXPECT_NEAR(m.duration(GateOp::o1(dense::pi / 2, 0)), 30.0, 1e-12);
  GateSequence seq(2);
  seq.append(GateOp::o4(dense::pi / 16, 0.0)).append(GateOp::o2(dense::pi / 16)).append(GateOp::o2(dense::pi / 32));
  const auto st = sequence_stats(seq);
  EXPECT_EQ(st.gate_count, 3u);
  EXPECT_EQ(st.per_kind[static_cast<std::size_t>(GateKind::O2)], 2u);
  EXPECT_NEAR(st.wall_time_us, 45.0, 1e-12);
}
