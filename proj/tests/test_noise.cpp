#include "dense_oracle.hpp"

#include "trotterion/compiler.hpp"
#include "trotterion/noise.hpp"
#include "trotterion/oracle.hpp"

#include <gtest/gtest.h>

using namespace trotterion;

namespace {

const double theta_a = kPi / (2.0 * std::sqrt(2.0));

CompiledProgram fig1a_iv() { return compile_first_order(ising2(0.5, 1.0), 4 * theta_a, 16); }

std::vector<Observable> obs(std::initializer_list<const char*> specs, std::size_t n) {
  std::vector<Observable> out;
  for (const char* s : specs) {
    for (auto& o : Observable::parse(s, n)) out.push_back(o);
  }
  return out;
}

double swing(const ShotEnsemble& e, std::size_t k) {
  double lo = 1e9;
  double hi = -1e9;
  for (const auto& m : e.mean) {
    lo = std::min(lo, m[k]);
    hi = std::max(hi, m[k]);
  }
  return hi - lo;
}

}  // namespace

TEST(Rng, SubstreamsAreDeterministicAndDistinct) {
  auto a = SplitMix64::substream(5, 0);
  auto b = SplitMix64::substream(5, 0);
  auto c = SplitMix64::substream(5, 1);
  for (int k = 0; k < 10; ++k) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  auto r = SplitMix64::substream(1, 2);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const double g = r.normal();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(sq / n, 1.0, 0.04);
  for (int k = 0; k < 1000; ++k) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Observables, ParseLabelsAndEvaluate) {
  const auto h = Observable::parse("hamming", 3);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_EQ(h[2].label, "P2");
  const auto p = Observable::parse("pop:udd", 3).front();
  EXPECT_EQ(p.label, "P_udd");
  EXPECT_DOUBLE_EQ(p.evaluate(basis_state(3, 0b110)), 1.0);
  const auto x = Observable::parse("pop:+-", 2).front();
  EXPECT_TRUE(x.is_probability());
  EXPECT_NEAR(x.evaluate(product_state("+-")), 1.0, 1e-15);
  EXPECT_NEAR(x.evaluate(product_state("uu")), 0.25, 1e-15);
  const auto z = Observable::parse("pauli:ZXX", 3).front();
  EXPECT_EQ(z.label, "<ZXX>");
  EXPECT_NEAR(z.evaluate(product_state("u++")), 1.0, 1e-15);
  EXPECT_NEAR(Observable::parse("parity", 2).front().evaluate(basis_state(2, 1)), -1.0, 1e-15);
  EXPECT_THROW(Observable::parse("pop:uu", 3), ConfigError);
  EXPECT_THROW(Observable::parse("hamming:4", 3), ConfigError);
  EXPECT_THROW(Observable::parse("energy", 3), ConfigError);
  EXPECT_THROW(Observable::parse("pauli:ZX", 3), ConfigError);
}

TEST(Perturbation, PhasesScaleWithCouplingError) {
  GateSequence seq(2);
  seq.append(GateOp::o4(1.0, 0.0)).append(GateOp::o3(1.0, 0.0)).append(GateOp::o2(1.0)).append(GateOp::o1(1.0, 0));
  const auto p = perturb_sequence(seq, 0.1);
  EXPECT_NEAR(p[0].theta, 1.21, 1e-12);
  EXPECT_NEAR(p[1].theta, 1.1, 1e-12);
  EXPECT_NEAR(p[2].theta, 1.21, 1e-12);
  EXPECT_NEAR(p[3].theta, 1.21, 1e-12);
  EXPECT_THROW(perturb_sequence(seq, -1.0), std::invalid_argument);
  const auto m = apply_miscalibration(seq, GateKind::O4, 0.01);
  EXPECT_NEAR(m[0].theta, 1.01, 1e-12);
  EXPECT_DOUBLE_EQ(m[1].theta, 1.0);
  EXPECT_THROW(apply_miscalibration(seq, GateKind::O4, 0.2), std::invalid_argument);
}

TEST(Ensemble, ZeroNoiseReproducesIdealCheckpoints) {
  const auto prog = fig1a_iv();
  const auto o = obs({"pop:uu", "pop:dd"}, 2);
  NoiseParams p;
  p.shots = 3;
  p.analytic = true;
  const auto e = run_noisy_ensemble(prog, product_state("dd"), o, p);
  const auto ideal = checkpoint_expectations(prog, product_state("dd"), o);
  ASSERT_EQ(e.mean.size(), 17u);
  for (std::size_t k = 0; k < e.mean.size(); ++k) {
    EXPECT_NEAR(e.mean[k][0], ideal[k][0], 1e-12);
    EXPECT_NEAR(e.error[k][0], 0.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(e.thetas.back(), 4 * theta_a);
}

TEST(Ensemble, SameSeedGivesIdenticalOutput) {
  const auto prog = fig1a_iv();
  const auto o = obs({"pop:uu"}, 2);
  NoiseParams p;
  p.sigma_rel = 0.02;
  p.shots = 300;
  p.seed = 17;
  const auto a = run_noisy_ensemble(prog, product_state("dd"), o, p);
  const auto b = run_noisy_ensemble(prog, product_state("dd"), o, p);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.counts, b.counts);
  p.seed = 18;
  const auto c = run_noisy_ensemble(prog, product_state("dd"), o, p);
  EXPECT_NE(a.mean, c.mean);
}

TEST(Ensemble, SamplingModeStaysWithinStatisticalError) {
  const auto prog = fig1a_iv();
  const auto o = obs({"pop:uu", "parity"}, 2);
  NoiseParams p;
  p.shots = 4000;
  p.seed = 3;
  const auto e = run_noisy_ensemble(prog, product_state("dd"), o, p);
  const auto ideal = checkpoint_expectations(prog, product_state("dd"), o);
  for (std::size_t k = 0; k < e.mean.size(); ++k) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LT(std::abs(e.mean[k][j] - ideal[k][j]), 5 * e.error[k][j] + 1e-9);
    EXPECT_GE(e.mean[k][0], 0.0);
    EXPECT_LE(e.mean[k][0], 1.0);
  }
}

TEST(Ensemble, FluctuationsDampTheOscillation) {
  const auto prog = fig1a_iv();
  const auto o = obs({"pop:uu"}, 2);
  NoiseParams p;
  p.shots = 2000;
  p.analytic = true;
  p.seed = 4;
  double prev = 2.0;
  for (double s : {0.0, 0.01, 0.02, 0.05}) {
    p.sigma_rel = s;
    const double a = swing(run_noisy_ensemble(prog, product_state("dd"), o, p), 0);
    EXPECT_LT(a, prev) << s;
    prev = a;
  }
}

TEST(Ensemble, MiscalibrationIsDeterministic) {
  const auto prog = compile_first_order(long_range_ising(3, 0.5, 1.0).hamiltonian, 12 * kPi / 16, 12);
  const auto o = obs({"hamming"}, 3);
  NoiseParams p;
  p.shots = 1;
  p.analytic = true;
  p.miscalibration[GateKind::O4] = 0.01;
  const auto e = run_noisy_ensemble(prog, product_state("uuu"), o, p);
  const auto direct = checkpoint_expectations(apply_miscalibration(prog, GateKind::O4, 0.01), product_state("uuu"), o);
  for (std::size_t k = 0; k < e.mean.size(); ++k) EXPECT_NEAR(e.mean[k][0], direct[k][0], 1e-12);
}

TEST(NoiseParams, Validation) {
  NoiseParams p;
  p.sigma_rel = -0.1;
  EXPECT_THROW(p.validate(), ConfigError);
  p.sigma_rel = 0.0;
  p.shots = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p.shots = 1;
  p.miscalibration[GateKind::O2] = 0.5;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(NoisyTruthTable, NoiselessProgramIsPerfect) {
  const auto prog = compile_many_body(PauliString::parse("ZXX"), kPi / 4);
  std::vector<LabelledState> basis;
  for (std::uint64_t k = 0; k < 8; ++k) basis.push_back({std::to_string(k), basis_state(3, k)});
  NoiseParams p;
  p.shots = 5;
  p.analytic = true;
  const auto t = noisy_truth_table(prog.sequence, basis, propagator(many_body_model(PauliString::parse("ZXX"), 1.0), kPi / 4), p);
  EXPECT_NEAR(t.mean_fidelity(), 1.0, 1e-9);
  p.sigma_rel = 0.05;
  p.shots = 200;
  const auto noisy = noisy_truth_table(prog.sequence, basis, propagator(many_body_model(PauliString::parse("ZXX"), 1.0), kPi / 4), p);
  EXPECT_LT(noisy.mean_fidelity(), 1.0);
}
