#include "dense_oracle.hpp"

#include "trotterion/compiler.hpp"
#include "trotterion/metrics.hpp"
#include "trotterion/oracle.hpp"

#include <gtest/gtest.h>

using namespace trotterion;

namespace {

const double theta_a = dense::pi / (2.0 * std::sqrt(2.0));

dense::Mat power(const dense::Mat& u, std::size_t k) {
  dense::Mat out = dense::Mat::Identity(u.rows(), u.cols());
  for (std::size_t i = 0; i < k; ++i) out = u * out;
  return out;
}

dense::Mat exact(const dense::Terms& terms, double theta) { return dense::expm_h(dense::hamiltonian(terms), theta); }

}  // namespace

TEST(FirstOrder, SingleStepIsCouplingThenField) {
  const auto prog = compile_first_order(ising2(0.5, 1.0), theta_a, 1);
  ASSERT_EQ(prog.sequence.size(), 2u);
  EXPECT_EQ(prog.sequence[0], GateOp::o4(theta_a, 0.0));
  EXPECT_EQ(prog.sequence[1], GateOp::o2(theta_a / 2));
  const auto flipped = compile_first_order(ising2(0.5, 1.0), theta_a, 1, CompileOptions{true, {}});
  EXPECT_EQ(flipped.sequence[0].kind, GateKind::O2);
}

TEST(FirstOrder, FourStepsGivePerStepPhases) {
  const auto prog = compile_first_order(ising2(0.5, 1.0), theta_a, 4);
  ASSERT_EQ(prog.sequence.size(), 8u);
  EXPECT_EQ(prog.checkpoints, (std::vector<std::size_t>{2, 4, 6, 8}));
  for (std::size_t k = 0; k < 8; k += 2) {
    EXPECT_DOUBLE_EQ(prog.sequence[k].theta, theta_a / 4);
    EXPECT_DOUBLE_EQ(prog.sequence[k + 1].theta, theta_a / 8);
  }
  EXPECT_DOUBLE_EQ(prog.theta_at(2), theta_a / 2);
  EXPECT_EQ(prog.step_labels.front(), "O4.O2");
}

TEST(FirstOrder, ProcessFidelityMatchesDirectProductFormula) {
  const dense::Terms h = {{0.5, "ZI"}, {0.5, "IZ"}, {1.0, "XX"}};
  const dense::Mat u_exact = exact(h, theta_a);
  const double f1 = dense::process_fidelity(sequence_unitary(compile_first_order(ising2(0.5, 1.0), theta_a, 1).sequence), u_exact);
  const double f4 = dense::process_fidelity(sequence_unitary(compile_first_order(ising2(0.5, 1.0), theta_a, 4).sequence), u_exact);
  EXPECT_NEAR(f1, 0.61046, 5e-5);
  EXPECT_NEAR(f4, 0.98033, 5e-5);
}

TEST(FirstOrder, LongRangeStepEqualsDenseProduct) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (std::size_t n = 2; n <= 5; ++n) {
    const double b = u(rng);
    const double j = u(rng);
    const double theta = u(rng);
    const std::size_t steps = 3;
    const auto prog = compile_first_order(long_range_ising(n, b, j).hamiltonian, theta, steps);
    const double dt = theta / steps;
    const dense::Mat step = dense::expm_h(dense::collective(dense::pauli('Z'), n), b * dt) *
                            dense::expm_h(dense::all_pairs(dense::pauli('X'), n), j * dt);
    EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), power(step, steps)), 1e-9) << "n=" << n;
  }
}

TEST(FirstOrder, XyzModelEqualsDenseProduct) {
  const double dt = 0.13;
  const auto prog = compile_first_order(xyz2(0.7, 1.1), 2 * dt, 2);
  const dense::Mat step = exact({{0.7, "ZI"}, {0.7, "IZ"}}, dt) * exact({{1.1, "ZZ"}}, dt) * exact({{1.1, "YY"}}, dt) *
                          exact({{1.1, "XX"}}, dt);
  EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), power(step, 2)), 1e-10);
}

TEST(FirstOrder, TransverseFieldUsesCollectiveRotation) {
  WeightedPauliSum h(3);
  h.add(0.8, "XXI").add(0.8, "XIX").add(0.8, "IXX").add(0.3, "YII").add(0.3, "IYI").add(0.3, "IIY");
  const auto prog = compile_first_order(h, 0.4, 1);
  ASSERT_EQ(prog.sequence.size(), 2u);
  EXPECT_EQ(prog.sequence[1].kind, GateKind::O3);
  const dense::Mat expect = exact({{0.3, "YII"}, {0.3, "IYI"}, {0.3, "IIY"}}, 0.4) *
                            exact({{0.8, "XXI"}, {0.8, "XIX"}, {0.8, "IXX"}}, 0.4);
  EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), expect), 1e-10);
}

TEST(FirstOrder, RejectsUnmappableInput) {
  EXPECT_THROW(compile_first_order(ising2(0.5, 1.0), 1.0, 0), CompileError);
  WeightedPauliSum h(3);
  h.add(1.0, "XYI");
  EXPECT_THROW(compile_first_order(h, 1.0, 1), CompileError);
  WeightedPauliSum nonuniform(2);
  nonuniform.add(1.0, "XI").add(0.5, "IX");
  EXPECT_THROW(compile_first_order(nonuniform, 1.0, 1), CompileError);
}

TEST(SecondOrder, SplitsFieldAroundCoupling) {
  const auto prog = compile_second_order(ising2(1.0, 1.0), dense::pi, 8);
  ASSERT_EQ(prog.sequence.size(), 24u);
  EXPECT_EQ(prog.sequence[0], GateOp::o2(dense::pi / 16));
  EXPECT_EQ(prog.sequence[1], GateOp::o4(dense::pi / 8, 0.0));
  EXPECT_EQ(prog.sequence[2], GateOp::o2(dense::pi / 16));
  const dense::Mat half = exact({{1.0, "ZI"}, {1.0, "IZ"}}, dense::pi / 16);
  const dense::Mat step = half * exact({{1.0, "XX"}}, dense::pi / 8) * half;
  EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), power(step, 8)), 1e-10);
}

TEST(SecondOrder, PureCouplingIsNotSplit) {
  const auto prog = compile_second_order(long_range_ising(3, 0.0, 1.0).hamiltonian, 1.0, 2);
  EXPECT_EQ(prog.sequence.size(), 2u);
}

TEST(TrotterError, ShrinksWithStepCountForBothOrders) {
  const auto h = ising2(1.0, 1.0);
  const auto u = propagator(h, dense::pi);
  for (auto compile : {&compile_first_order, &compile_second_order}) {
    double prev = 1.0;
    for (std::size_t n : {16, 32, 64}) {
      const double infid = 1.0 - process_fidelity(sequence_unitary(compile(h, dense::pi, n, {}).sequence), u);
      EXPECT_LT(infid, prev);
      prev = infid;
    }
  }
}

TEST(ModelSteps, GateCountsPerTemplate) {
  EXPECT_EQ(compile_model_steps(StepModel::Ising, dense::pi / 16, 12).sequence.size(), 24u);
  EXPECT_EQ(compile_model_steps(StepModel::XY, dense::pi / 16, 12).sequence.size(), 36u);
  EXPECT_EQ(compile_model_steps(StepModel::XYZ, dense::pi / 16, 12).sequence.size(), 84u);
  EXPECT_THROW(compile_model_steps(StepModel::XY, dense::pi / 16, 0), CompileError);
}

TEST(ModelSteps, StepsMatchDenseProducts) {
  const double r = dense::pi / 16;
  const dense::Mat c = exact({{1.0, "ZI"}, {1.0, "IZ"}}, r);
  const dense::Mat d = exact({{1.0, "XX"}}, r);
  const dense::Mat e = exact({{1.0, "YY"}}, r);
  const dense::Mat zz = exact({{1.0, "ZZ"}}, r);
  EXPECT_LT(dense::phase_distance(sequence_unitary(compile_model_steps(StepModel::Ising, r, 1).sequence), d * c), 1e-10);
  EXPECT_LT(dense::phase_distance(sequence_unitary(compile_model_steps(StepModel::XY, r, 1).sequence), e * d * c), 1e-10);
  EXPECT_LT(dense::phase_distance(sequence_unitary(compile_model_steps(StepModel::XYZ, r, 1).sequence), zz * e * d * c),
            1e-10);
}

TEST(Ramp, ScheduleAndGateCount) {
  const RampSpec ramp;
  EXPECT_EQ(ramp_schedule(ramp, 8, dense::pi / 16), (std::vector<std::size_t>{0, 1, 1, 2, 2, 3, 3, 4}));
  const auto prog = compile_time_dependent(ramp, 8);
  EXPECT_EQ(prog.sequence.size(), 24u);
  EXPECT_EQ(prog.sequence[0], GateOp::o2(dense::pi / 16));
  ASSERT_TRUE(prog.target_ramp.has_value());
  RampSpec falling;
  falling.j_start = 0.0;
  falling.j_end = -4.0;
  EXPECT_THROW(ramp_schedule(falling, 8, dense::pi / 16), CompileError);
}

TEST(CouplingGraph, DoubledPairUsesOneRefocusedBlock) {
  RealMatrix j(3, 3);
  j << 0, 1, 1, 1, 0, 2, 1, 2, 0;
  const auto prog = compile_coupling_graph(CouplingGraph(j), 0.3);
  ASSERT_EQ(prog.sequence.size(), 4u);
  EXPECT_EQ(prog.sequence[0].kind, GateKind::O4);
  EXPECT_EQ(prog.sequence[1].kind, GateKind::O1);
  EXPECT_EQ(prog.sequence[2].kind, GateKind::O4);
  EXPECT_EQ(prog.sequence[3].kind, GateKind::O1);
  EXPECT_EQ(*prog.sequence[1].target, 0u);
  EXPECT_NEAR(prog.sequence[0].theta + prog.sequence[2].theta, 2 * 0.3, 1e-12);
  EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), exact({{1, "XXI"}, {1, "XIX"}, {2, "IXX"}}, 0.3)), 1e-9);
}

TEST(CouplingGraph, NearestNeighbourChainIsExact) {
  RealMatrix j(3, 3);
  j << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = u(rng);
    const auto prog = compile_coupling_graph(CouplingGraph(j), theta);
    EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), exact({{1, "XXI"}, {1, "IXX"}}, theta)), 1e-9);
  }
}

TEST(CouplingGraph, ExcludedSpinDropsOutOfUniformCoupling) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0.05, 1.5);
  for (std::size_t n : {3, 4}) {
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = u(rng);
      GateSequence seq(n);
      seq.append(GateOp::o4(theta, 0.0)).append(GateOp::o1(dense::pi / 2, k));
      seq.append(GateOp::o4(theta, 0.0)).append(GateOp::o1(dense::pi / 2, k));
      dense::Mat h = dense::Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (a != k && b != k) h += dense::on_spin(dense::pauli('X'), a, n) * dense::on_spin(dense::pauli('X'), b, n);
      EXPECT_LT(dense::phase_distance(sequence_unitary(seq), dense::expm_h(h, 2 * theta)), 1e-9) << n << "," << k;
    }
  }
}

TEST(CouplingGraph, RandomGraphsCompileExactly) {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (std::size_t n : {3, 4}) {
    for (int trial = 0; trial < 6; ++trial) {
      RealMatrix j = RealMatrix::Zero(n, n);
      dense::Terms terms;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          j(a, b) = j(b, a) = u(rng);
          std::string s(n, 'I');
          s[a] = s[b] = 'X';
          terms.emplace_back(j(a, b), s);
        }
      }
      const double theta = 0.37;
      const auto prog = compile_coupling_graph(CouplingGraph(j), theta);
      EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), exact(terms, theta)), 1e-9);
    }
  }
}

TEST(CouplingGraph, RejectsAsymmetricMatrix) {
  RealMatrix j(2, 2);
  j << 0, 1, 1.5, 0;
  EXPECT_THROW(CouplingGraph{j}, std::invalid_argument);
}

TEST(ManyBody, EverySupportedStringMatchesExponential) {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (std::size_t n = 3; n <= 6; ++n) {
    for (std::size_t site = 0; site < n; ++site) {
      for (char special : {'Y', 'Z'}) {
        std::string s(n, 'X');
        s[site] = special;
        const double theta = u(rng);
        const auto prog = compile_many_body(PauliString::parse(s), theta);
        EXPECT_LE(prog.sequence.size(), 6u);
        EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), dense::expm_h(dense::string_op(s), theta)), 1e-9)
            << s;
      }
    }
  }
}

TEST(ManyBody, ThreeBodyCoreIsThreeGates) {
  const auto prog = compile_many_body(PauliString::parse("ZXX"), 0.4);
  ASSERT_EQ(prog.sequence.size(), 3u);
  EXPECT_EQ(prog.sequence[0], GateOp::o4(dense::pi / 4, 0.0));
  EXPECT_EQ(prog.sequence[1].kind, GateKind::O1);
  EXPECT_EQ(*prog.sequence[1].target, 0u);
}

TEST(ManyBody, SixBodyMakesGhzAtQuarterTurn) {
  const auto prog = compile_many_body(PauliString::parse("YXXXXX"), dense::pi / 4);
  const auto h = hamming_histogram(apply_sequence(product_state("uuuuuu"), prog.sequence));
  EXPECT_NEAR(h[0], 0.5, 1e-9);
  EXPECT_NEAR(h[6], 0.5, 1e-9);
}

TEST(ManyBody, UnsupportedShapesThrow) {
  EXPECT_THROW(compile_many_body(PauliString::parse("ZZX"), 0.1), CompileError);
  EXPECT_THROW(compile_many_body(PauliString::parse("ZX"), 0.1), CompileError);
  EXPECT_THROW(compile_many_body(PauliString::parse("ZIX"), 0.1), CompileError);
}

TEST(ManyBody, TransverseFieldStepsMatchDenseProduct) {
  const double r = dense::pi / 4;
  const auto prog = compile_many_body_with_field(PauliString::parse("ZXX"), FieldSpec::y(0.5), r, 3);
  ASSERT_EQ(prog.sequence.size(), 12u);
  const dense::Mat step = dense::o3(0.5 * r, dense::pi / 2, 3) * dense::expm_h(dense::string_op("ZXX"), r);
  EXPECT_LT(dense::phase_distance(sequence_unitary(prog.sequence), power(step, 3)), 1e-9);
  const auto bare = compile_many_body_with_field(PauliString::parse("ZXX"), FieldSpec::y(0.0), r, 2);
  EXPECT_EQ(bare.sequence.size(), 6u);
  EXPECT_THROW(compile_many_body_with_field(PauliString::parse("ZXX"), FieldSpec::z(1.0), r, 2), CompileError);
}

TEST(PhaseWrapping, NegativePhasesAreEquivalentModuloGlobalPhase) {
  for (double t : {-0.3, -3.5, 4.0}) {
    EXPECT_GE(wrapped_o1(t, 0).theta, 0.0);
    EXPECT_LT(dense::phase_distance(gate_unitary(wrapped_o1(t, 1), 2), dense::o1(t, 1, 2)), 1e-12);
    EXPECT_LT(dense::phase_distance(gate_unitary(wrapped_o2(t), 3), dense::o2(t, 3)), 1e-12);
    EXPECT_LT(dense::phase_distance(gate_unitary(signed_o3(t, 0.4), 2), dense::o3(t, 0.4, 2)), 1e-12);
  }
}
