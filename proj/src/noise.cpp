#include "trotterion/noise.hpp"

#include <cmath>

namespace trotterion {

void NoiseParams::validate() const {
  if (!(sigma_rel >= 0.0) || !std::isfinite(sigma_rel)) throw ConfigError("sigma_rel must be finite and non-negative");
  if (shots == 0) throw ConfigError("shots must be at least 1");
  for (const auto& [kind, rel] : miscalibration) {
    if (!(std::abs(rel) < 0.1)) throw ConfigError("miscalibration of " + gate_kind_name(kind) + " must satisfy |err| < 0.1");
  }
}

GateSequence perturb_sequence(const GateSequence& seq, double eps) {
  if (!(eps > -1.0)) throw std::invalid_argument("coupling error must exceed -1");
  const double quad = (1.0 + eps) * (1.0 + eps);
  GateSequence out(seq.spin_count());
  for (auto g : seq) {
    g.theta *= g.kind == GateKind::O3 ? (1.0 + eps) : quad;
    out.append(g);
  }
  return out;
}

GateSequence apply_miscalibration(const GateSequence& seq, GateKind kind, double rel_err) {
  if (!(std::abs(rel_err) < 0.1)) throw std::invalid_argument("miscalibration must satisfy |err| < 0.1");
  GateSequence out(seq.spin_count());
  for (auto g : seq) {
    if (g.kind == kind) g.theta *= 1.0 + rel_err;
    out.append(g);
  }
  return out;
}

CompiledProgram apply_miscalibration(const CompiledProgram& program, GateKind kind, double rel_err) {
  CompiledProgram out = program;
  out.sequence = apply_miscalibration(program.sequence, kind, rel_err);
  out.target_id += ":miscal(" + gate_kind_name(kind) + "," + format_double(rel_err) + ")";
  return out;
}

double draw_coupling_error(double sigma_rel, SplitMix64& rng) {
  if (sigma_rel == 0.0) return 0.0;
  double eps = sigma_rel * rng.normal();
  while (eps <= -1.0) eps = sigma_rel * rng.normal();
  return eps;
}

namespace {

// States at θ = 0 and after every checkpoint.
std::vector<StateVector> checkpoint_states(const GateSequence& seq, const std::vector<std::size_t>& checkpoints,
                                           const StateVector& psi0) {
  std::vector<StateVector> states;
  states.reserve(checkpoints.size() + 1);
  StateVector psi = psi0;
  states.push_back(psi);
  std::size_t g = 0;
  for (auto cp : checkpoints) {
    for (; g < cp; ++g) apply_gate_inplace(psi, seq[g]);
    states.push_back(psi);
  }
  return states;
}

GateSequence calibrated(const CompiledProgram& program, const NoiseParams& params) {
  GateSequence seq = program.sequence;
  for (const auto& [kind, rel] : params.miscalibration) seq = apply_miscalibration(seq, kind, rel);
  return seq;
}

}  // namespace

std::vector<std::vector<double>> checkpoint_expectations(const CompiledProgram& program, const StateVector& psi0,
                                                         const std::vector<Observable>& observables) {
  const auto states = checkpoint_states(program.sequence, program.checkpoints, psi0);
  std::vector<std::vector<double>> out;
  for (const auto& s : states) {
    std::vector<double> row;
    for (const auto& o : observables) row.push_back(o.evaluate(s));
    out.push_back(std::move(row));
  }
  return out;
}

ShotEnsemble run_noisy_ensemble(const CompiledProgram& program, const StateVector& psi0,
                                const std::vector<Observable>& observables, const NoiseParams& params) {
  params.validate();
  if (spins_for_dimension(psi0.size()) != program.sequence.spin_count()) {
    throw DimensionError("initial state does not match program");
  }
  const GateSequence base = calibrated(program, params);
  const std::size_t points = program.checkpoints.size() + 1;
  const std::size_t m = observables.size();

  // Welford accumulators; a plain sum of squares loses the spread when it is tiny
  std::vector<std::vector<double>> avg(points, std::vector<double>(m, 0.0));
  std::vector<std::vector<double>> m2(points, std::vector<double>(m, 0.0));
  std::vector<std::vector<std::size_t>> ones(points, std::vector<std::size_t>(m, 0));

  for (std::size_t shot = 0; shot < params.shots; ++shot) {
    auto rng = SplitMix64::substream(params.seed, shot);
    const double eps = draw_coupling_error(params.sigma_rel, rng);
    const GateSequence seq = eps == 0.0 ? base : perturb_sequence(base, eps);
    const auto states = checkpoint_states(seq, program.checkpoints, psi0);
    for (std::size_t p = 0; p < points; ++p) {
      for (std::size_t k = 0; k < m; ++k) {
        const double v = params.analytic ? observables[k].evaluate(states[p]) : observables[k].sample(states[p], rng);
        const double delta = v - avg[p][k];
        avg[p][k] += delta / static_cast<double>(shot + 1);
        m2[p][k] += delta * (v - avg[p][k]);
        if (!params.analytic && v == 1.0) ++ones[p][k];
      }
    }
  }

  ShotEnsemble e;
  e.shots = params.shots;
  e.analytic = params.analytic;
  for (const auto& o : observables) e.labels.push_back(o.label);
  const double s = static_cast<double>(params.shots);
  for (std::size_t p = 0; p < points; ++p) {
    e.thetas.push_back(program.theta_at(p));
    std::vector<double> mean(m);
    std::vector<double> err(m);
    for (std::size_t k = 0; k < m; ++k) {
      mean[k] = avg[p][k];
      if (params.analytic) {
        const double var = m2[p][k] / s;
        err[k] = params.shots > 1 ? std::sqrt(var / (s - 1.0)) : 0.0;
      } else if (observables[k].is_probability()) {
        err[k] = std::sqrt(std::max(0.0, mean[k] * (1.0 - mean[k])) / s);
      } else {
        err[k] = std::sqrt(std::max(0.0, 1.0 - mean[k] * mean[k]) / s);
      }
    }
    e.mean.push_back(std::move(mean));
    e.error.push_back(std::move(err));
    e.counts.push_back(std::move(ones[p]));
  }
  return e;
}

TruthTable noisy_truth_table(const GateSequence& program, const std::vector<LabelledState>& basis,
                             const UnitaryMatrix& reference, const NoiseParams& params) {
  params.validate();
  GateSequence base = program;
  for (const auto& [kind, rel] : params.miscalibration) base = apply_miscalibration(base, kind, rel);
  TruthTable t;
  t.basis_label = "noisy";
  std::vector<StateVector> ideal;
  for (const auto& in : basis) {
    ideal.push_back(reference * in.state);
    t.rows.push_back({in.label, 0.0, 0.0});
  }
  std::vector<double> sum_sq(basis.size(), 0.0);
  for (std::size_t shot = 0; shot < params.shots; ++shot) {
    auto rng = SplitMix64::substream(params.seed, shot);
    const double eps = draw_coupling_error(params.sigma_rel, rng);
    const GateSequence seq = perturb_sequence(base, eps);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double f = state_fidelity(ideal[k], apply_sequence(basis[k].state, seq));
      const double v = params.analytic ? f : (rng.bernoulli(f) ? 1.0 : 0.0);
      t.rows[k].fidelity += v;
      sum_sq[k] += v * v;
    }
  }
  const double s = static_cast<double>(params.shots);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto& r = t.rows[k];
    r.fidelity /= s;
    const double var = std::max(0.0, sum_sq[k] / s - r.fidelity * r.fidelity);
    r.uncertainty = std::sqrt(var / s);
  }
  return t;
}

}  // namespace trotterion
