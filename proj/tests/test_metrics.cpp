#include "dense_oracle.hpp"

#include "trotterion/compiler.hpp"
#include "trotterion/metrics.hpp"

#include <gtest/gtest.h>

#include <bit>

using namespace trotterion;

namespace {

dense::Mat random_density(std::size_t n, std::mt19937_64& rng) {
  const auto d = Eigen::Index{1} << n;
  dense::Mat a = dense::Mat::Zero(d, d);
  for (int k = 0; k < 3; ++k) {
    const dense::Vec v = dense::random_state(n, rng);
    a += (0.2 + 0.3 * k) * v * v.adjoint();
  }
  return a / a.trace().real();
}

double uhlmann(const dense::Mat& a, const dense::Mat& b) {
  const dense::Mat s = a.sqrt();
  const dense::Mat m = (s * b * s).sqrt();
  const double t = m.trace().real();
  return t * t;
}

}  // namespace

TEST(StateFidelity, PureMixedAndUhlmannForms) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector a = dense::random_state(2, rng);
    const StateVector b = dense::random_state(2, rng);
    const DensityMatrix r = random_density(2, rng);
    const DensityMatrix s = random_density(2, rng);
    EXPECT_NEAR(state_fidelity(a, b), std::norm(a.dot(b)), 1e-12);
    EXPECT_NEAR(state_fidelity(a, r), (a.adjoint() * r * a)(0, 0).real(), 1e-12);
    EXPECT_NEAR(state_fidelity(r, a), state_fidelity(a, r), 1e-12);
    EXPECT_NEAR(state_fidelity(r, s), uhlmann(r, s), 1e-8);
    EXPECT_NEAR(state_fidelity(r, s), state_fidelity(s, r), 1e-8);
    EXPECT_NEAR(state_fidelity(r, r), 1.0, 1e-8);
  }
  EXPECT_THROW(state_fidelity(StateVector(dense::basis(1, 0)), StateVector(dense::basis(2, 0))), DimensionError);
}

TEST(ProcessFidelity, UnitaryOverlapAndPhaseInvariance) {
  std::mt19937_64 rng(52);
  const dense::Mat u = dense::random_unitary(2, rng);
  const dense::Mat v = dense::random_unitary(2, rng);
  EXPECT_NEAR(process_fidelity(u, v), dense::process_fidelity(u, v), 1e-12);
  EXPECT_NEAR(process_fidelity(u, std::polar(1.0, 0.7) * u), 1.0, 1e-12);
  EXPECT_THROW(process_fidelity(u, 2.0 * v), std::invalid_argument);
}

TEST(Tangle, KnownValuesAndPureMixedAgreement) {
  const StateVector bell = (dense::basis(2, 0) + dense::basis(2, 3)) / std::sqrt(2.0);
  EXPECT_NEAR(tangle2(bell), 1.0, 1e-12);
  EXPECT_NEAR(tangle2(StateVector(product_state("+d"))), 0.0, 1e-12);
  for (double p : {0.2, 0.5, 0.8, 1.0}) {
    const DensityMatrix w = p * density_matrix(bell) + (1 - p) / 4 * DensityMatrix::Identity(4, 4);
    const double c = std::max(0.0, (3 * p - 1) / 2);
    EXPECT_NEAR(tangle2(w), c * c, 1e-9) << p;
  }
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector psi = dense::random_state(2, rng);
    // the mixed-state route takes square roots of near-zero eigenvalues
    EXPECT_NEAR(tangle2(psi), tangle2(density_matrix(psi)), 1e-7);
  }
  EXPECT_THROW(tangle2(StateVector(dense::basis(3, 0))), DimensionError);
}

TEST(Complementarity, ZAndXBasesAreMutuallyUnbiased) {
  std::vector<StateVector> z;
  std::vector<StateVector> x;
  for (const char* l : {"uu", "ud", "du", "dd"}) z.push_back(product_state(l));
  for (const char* l : {"++", "+-", "-+", "--"}) x.push_back(product_state(l));
  EXPECT_TRUE(complementary_check(z, x));
  EXPECT_FALSE(complementary_check(z, z));
}

TEST(TruthTable, IdealProgramGivesUnitFidelity) {
  const auto prog = compile_many_body(PauliString::parse("ZXX"), 0.3);
  const auto target = dense::expm_h(dense::string_op("ZXX"), 0.3);
  std::vector<LabelledState> basis;
  for (std::uint64_t k = 0; k < 8; ++k) basis.push_back({std::to_string(k), basis_state(3, k)});
  const auto t = truth_table(prog.sequence, basis, target, "z");
  ASSERT_EQ(t.rows.size(), 8u);
  EXPECT_NEAR(t.mean_fidelity(), 1.0, 1e-9);
  basis.pop_back();
  EXPECT_THROW(truth_table(prog.sequence, basis, target), std::invalid_argument);
}

TEST(Hofmann, BoundFormulaAndUncertainty) {
  const auto b = hofmann_bounds(0.9425, 0.9077, 0.003, 0.004);
  EXPECT_NEAR(b.lower, 0.8502, 1e-12);
  EXPECT_NEAR(b.upper, 0.9077, 1e-12);
  EXPECT_NEAR(b.lower_uncertainty, 0.005, 1e-12);
  EXPECT_NEAR(b.upper_uncertainty, 0.004, 1e-12);
  const auto one = hofmann_bounds(1.0, 1.0);
  EXPECT_DOUBLE_EQ(one.lower, 1.0);
  EXPECT_DOUBLE_EQ(one.upper, 1.0);
}

TEST(Ghz, AnalysisAnglesAndSigns) {
  const auto a = ghz_analysis_angles(3, -dense::pi / 2);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_NEAR(a[0], -2 * dense::pi / 3, 1e-12);
  EXPECT_NEAR(a[1], -dense::pi / 3, 1e-12);
  EXPECT_NEAR(a[2], 0.0, 1e-12);
  EXPECT_EQ(alternating_signs(4), (std::vector<int>{1, -1, 1, -1}));
}

TEST(Ghz, IdealTargetsHaveUnitFidelity) {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (double chi : {-dense::pi / 2, 0.0, 1.0}) {
      const auto rec = ghz_record_from_state(ghz_target(n, dense::pi / 4, chi), dense::pi / 4, chi);
      EXPECT_NEAR(ghz_fidelity(rec), 1.0, 1e-12) << n << " " << chi;
    }
  }
  const auto prod = ghz_record_from_state(product_state("uuu"), dense::pi / 4, -dense::pi / 2);
  EXPECT_NEAR(ghz_fidelity(prod), 0.5, 1e-12);
}

TEST(Ghz, ParityFormulaEqualsDirectOverlapForAnyState) {
  std::mt19937_64 rng(54);
  for (std::size_t n : {2, 3, 4}) {
    for (int trial = 0; trial < 5; ++trial) {
      const StateVector psi = dense::random_state(n, rng);
      const auto rec = ghz_record_from_state(psi, dense::pi / 4, -dense::pi / 2);
      EXPECT_NEAR(ghz_fidelity(rec), state_fidelity(ghz_target(n, dense::pi / 4, -dense::pi / 2), psi), 1e-10);
    }
  }
}

TEST(Ghz, ParityObservableIsZParityAfterAnalysisPulse) {
  std::mt19937_64 rng(55);
  const StateVector psi = dense::random_state(3, rng);
  for (double phi : {0.0, 0.8, 2.5}) {
    const dense::Vec r = dense::o3(dense::pi / 4, phi, 3) * psi;
    double parity = 0.0;
    for (Eigen::Index b = 0; b < r.size(); ++b) parity += std::norm(r[b]) * ((std::popcount(static_cast<unsigned>(b)) % 2) ? -1 : 1);
    EXPECT_NEAR(ghz_parity_observable(psi, phi), parity, 1e-12);
    EXPECT_NEAR(ghz_parity_observable(density_matrix(psi), phi), parity, 1e-12);
  }
}

TEST(Ghz, RecordValidation) {
  GhzMeasurementRecord r;
  r.p_zero = 0.5;
  r.p_one = 0.5;
  r.parities = {0.9, -0.9};
  r.signs = {1};
  EXPECT_THROW(ghz_fidelity(r), std::invalid_argument);
  r.signs = {1, -1};
  r.parities = {1.2, 0.0};
  EXPECT_THROW(ghz_fidelity(r), std::invalid_argument);
}
