#include "trotterion/compiler.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace trotterion {

GateSequence CompiledProgram::at_checkpoint(std::size_t step) const {
  if (step == 0) return sequence.prefix(0);
  if (step > checkpoints.size()) throw std::out_of_range("checkpoint index out of range");
  return sequence.prefix(checkpoints[step - 1]);
}

double CompiledProgram::theta_at(std::size_t step) const {
  if (checkpoints.empty()) return 0.0;
  return target_theta * static_cast<double>(step) / static_cast<double>(checkpoints.size());
}

void CompiledProgram::check_invariants() const {
  for (std::size_t k = 1; k < checkpoints.size(); ++k) {
    if (checkpoints[k] <= checkpoints[k - 1]) throw std::logic_error("checkpoints not strictly increasing");
  }
  if (!checkpoints.empty() && checkpoints.back() != sequence.size()) {
    throw std::logic_error("last checkpoint does not match sequence length");
  }
}

GateOp wrapped_o1(double theta, std::size_t target) {
  // O1(θ+π) = -O1(θ)
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  return GateOp::o1(t, target);
}

GateOp wrapped_o2(double theta) {
  // O2(θ+π) = (-1)^n O2(θ)
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  return GateOp::o2(t);
}

GateOp signed_o3(double theta, double phi) {
  if (theta < 0.0) return GateOp::o3(-theta, std::fmod(phi + kPi, 2 * kPi));
  return GateOp::o3(theta, phi);
}

namespace {

void require_steps(std::size_t steps) {
  if (steps == 0) throw CompileError("step count must be at least 1");
}

std::string step_label(const GateSequence& seq, std::size_t from) {
  std::string s;
  for (std::size_t k = from; k < seq.size(); ++k) {
    if (!s.empty()) s += '.';
    s += gate_kind_name(seq[k].kind);
  }
  return s;
}

void close_step(CompiledProgram& prog, std::size_t from) {
  prog.step_labels.push_back(step_label(prog.sequence, from));
  prog.checkpoints.push_back(prog.sequence.size());
}

// ---------------------------------------------------------------- many body

struct ManyBodyPlan {
  std::size_t site = 0;
  int sign = 1;  // program realises exp(-i sign φ p) for O1 phase φ
  bool frame_change = false;
  bool even_correction = false;
};

PhasedPauli conjugate_quarter_turn(const PhasedPauli& p, const PauliString& q, bool forward) {
  // forward: U P U† with U = exp(-iπ/4 Q); otherwise U† P U
  if (p.string.commutes_with(q)) return p;
  return multiply(p, PhasedPauli{forward ? 1 : 3, q});
}

ManyBodyPlan plan_many_body(const PauliString& p) {
  const auto n = p.size();
  if (n < 3 || n > 6) throw CompileError("many-body strings need 3 to 6 spins, got " + std::to_string(n));
  ManyBodyPlan plan;
  std::size_t special = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (p[k] == Pauli::X) continue;
    if (p[k] == Pauli::I) throw CompileError("unsupported string shape '" + p.str() + "': identity factor");
    plan.site = k;
    ++special;
  }
  if (special != 1) throw CompileError("unsupported string shape '" + p.str() + "': need exactly one Z or Y site");

  // MS(π/4) Z_s MS(π/4)† with MS = Π_{i<j} exp(-iπ/4 X_i X_j)
  PhasedPauli eff{0, PauliString::single(n, plan.site, Pauli::Z)};
  for (std::size_t j = 0; j < n; ++j) {
    if (j != plan.site) eff = conjugate_quarter_turn(eff, PauliString::pair(n, plan.site, j, Pauli::X), true);
  }
  if (eff.phase % 2 != 0) throw std::logic_error("non-Hermitian effective generator");
  plan.sign = eff.phase == 0 ? 1 : -1;

  // even n: MS(π/2) ∝ X^{⊗n} survives and is undone by an appended O3(π/2,0)
  if (n % 2 == 0) {
    plan.even_correction = true;
    const PauliString all_x(std::vector<Pauli>(n, Pauli::X));
    if (!eff.string.commutes_with(all_x)) plan.sign = -plan.sign;
  }

  if (eff.string != p) {
    // F = O3(π/4,0) before and its inverse after: generator becomes F† N F
    const PhasedPauli signed_native{plan.sign == 1 ? 0 : 2, eff.string};
    const auto conj = conjugate_quarter_turn(signed_native, PauliString::single(n, plan.site, Pauli::X), false);
    if (conj.string != p || conj.phase % 2 != 0) {
      throw CompileError("unsupported string shape '" + p.str() + "'");
    }
    plan.frame_change = true;
    plan.sign = conj.phase == 0 ? 1 : -1;
  }
  return plan;
}

// ------------------------------------------------------------ term groups

struct TermGroups {
  std::size_t n = 0;
  std::array<RealMatrix, 3> coupling;  // X, Y, Z pair strengths
  std::array<bool, 3> has_coupling{};
  std::array<Eigen::VectorXd, 3> field;  // X, Y, Z per spin
  std::vector<PauliTerm> many_body;
  std::array<std::optional<GraphDecomposition>, 3> layers;

  bool has_fields() const {
    for (const auto& f : field) {
      if (!f.isZero(0.0)) return true;
    }
    return false;
  }
  bool has_interactions() const { return has_coupling[0] || has_coupling[1] || has_coupling[2] || !many_body.empty(); }
};

std::size_t axis_index(Pauli p) { return static_cast<std::size_t>(p) - 1; }

TermGroups classify(const WeightedPauliSum& h, const GraphCompileOptions& graph_options) {
  TermGroups g;
  g.n = h.spin_count();
  require_spin_count(g.n);
  const auto n = static_cast<Eigen::Index>(g.n);
  for (std::size_t a = 0; a < 3; ++a) {
    g.coupling[a] = RealMatrix::Zero(n, n);
    g.field[a] = Eigen::VectorXd::Zero(n);
  }
  for (const auto& t : h.terms()) {
    if (t.coefficient == 0.0) continue;
    const auto& s = t.string;
    std::vector<std::size_t> sites;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] != Pauli::I) sites.push_back(k);
    }
    if (sites.empty()) continue;  // global phase
    if (sites.size() == 1) {
      g.field[axis_index(s[sites[0]])][static_cast<Eigen::Index>(sites[0])] += t.coefficient;
      continue;
    }
    if (sites.size() == 2 && s[sites[0]] == s[sites[1]]) {
      const auto a = axis_index(s[sites[0]]);
      const auto i = static_cast<Eigen::Index>(sites[0]);
      const auto j = static_cast<Eigen::Index>(sites[1]);
      g.coupling[a](i, j) += t.coefficient;
      g.coupling[a](j, i) += t.coefficient;
      g.has_coupling[a] = true;
      continue;
    }
    if (sites.size() == g.n) {
      plan_many_body(s);  // throws for unsupported shapes
      g.many_body.push_back(t);
      continue;
    }
    throw CompileError("term '" + s.str() + "' has no native gate mapping");
  }
  for (std::size_t a = 0; a < 3; ++a) {
    if (!g.has_coupling[a]) continue;
    const auto& j = g.coupling[a];
    const double v = j(0, 1);
    bool uniform = v > 0.0;
    for (Eigen::Index i = 0; i < n && uniform; ++i) {
      for (Eigen::Index k = i + 1; k < n; ++k) uniform = uniform && j(i, k) == v;
    }
    if (!uniform) g.layers[a] = decompose_coupling_graph(CouplingGraph(j), graph_options);
  }
  for (std::size_t a = 0; a < 2; ++a) {
    const auto& f = g.field[a];
    if ((f.array() != f[0]).any()) throw CompileError("non-uniform transverse field has no native gate mapping");
  }
  return g;
}

void emit_pairwise(GateSequence& seq, const TermGroups& g, std::size_t axis, double dt, double phi) {
  if (g.layers[axis]) {
    emit_graph_layers(seq, *g.layers[axis], dt, phi);
  } else {
    seq.append(GateOp::o4(g.coupling[axis](0, 1) * dt, phi));
  }
}

void emit_interactions(GateSequence& seq, const TermGroups& g, double dt) {
  if (g.has_coupling[0]) emit_pairwise(seq, g, 0, dt, 0.0);
  if (g.has_coupling[1]) emit_pairwise(seq, g, 1, dt, kPi / 2);
  if (g.has_coupling[2]) {
    // ZZ = F† YY F with F = exp(-iπ/4 ΣX)
    seq.append(GateOp::o3(kPi / 4, 0.0));
    emit_pairwise(seq, g, 2, dt, kPi / 2);
    seq.append(GateOp::o3(kPi / 4, kPi));
  }
  for (const auto& t : g.many_body) emit_many_body(seq, t.string, t.coefficient * dt);
}

void emit_fields(GateSequence& seq, const TermGroups& g, double dt) {
  const auto& z = g.field[2];
  if (!z.isZero(0.0)) {
    if ((z.array() == z[0]).all()) {
      seq.append(wrapped_o2(z[0] * dt));
    } else {
      for (Eigen::Index k = 0; k < z.size(); ++k) {
        if (z[k] != 0.0) seq.append(wrapped_o1(z[k] * dt, static_cast<std::size_t>(k)));
      }
    }
  }
  const double bx = g.field[0][0];
  const double by = g.field[1][0];
  if (bx != 0.0 || by != 0.0) seq.append(GateOp::o3(std::hypot(bx, by) * dt, std::atan2(by, bx)));
}

CompiledProgram compile_trotter(const WeightedPauliSum& model, double theta, std::size_t steps,
                                const CompileOptions& options, TrotterOrder order) {
  require_steps(steps);
  if (!std::isfinite(theta) || theta < 0.0) throw CompileError("total phase must be finite and non-negative");
  const auto g = classify(model, options.graph);
  const double dt = theta / static_cast<double>(steps);
  CompiledProgram prog;
  prog.sequence = GateSequence(g.n);
  const bool split = order == TrotterOrder::Second && g.has_fields() && g.has_interactions();
  for (std::size_t s = 0; s < steps; ++s) {
    const auto from = prog.sequence.size();
    if (split) {
      emit_fields(prog.sequence, g, dt / 2);
      emit_interactions(prog.sequence, g, dt);
      emit_fields(prog.sequence, g, dt / 2);
    } else if (options.fields_first) {
      emit_fields(prog.sequence, g, dt);
      emit_interactions(prog.sequence, g, dt);
    } else {
      emit_interactions(prog.sequence, g, dt);
      emit_fields(prog.sequence, g, dt);
    }
    if (prog.sequence.size() == from) throw CompileError("model has no dynamics to compile");
    close_step(prog, from);
  }
  std::ostringstream id;
  id << (order == TrotterOrder::First ? "first_order" : "second_order") << ":steps=" << steps;
  prog.target_id = id.str();
  prog.target_model = model;
  prog.target_theta = theta;
  prog.check_invariants();
  return prog;
}

}  // namespace

CompiledProgram compile_first_order(const WeightedPauliSum& model, double theta, std::size_t steps,
                                    const CompileOptions& options) {
  return compile_trotter(model, theta, steps, options, TrotterOrder::First);
}

CompiledProgram compile_second_order(const WeightedPauliSum& model, double theta, std::size_t steps,
                                     const CompileOptions& options) {
  return compile_trotter(model, theta, steps, options, TrotterOrder::Second);
}

TrotterPlan plan_of(const CompiledProgram& program, TrotterOrder order) {
  if (program.checkpoints.empty()) throw CompileError("program has no steps");
  TrotterPlan plan;
  plan.order = order;
  plan.steps = program.checkpoints.size();
  plan.theta = program.target_theta;
  const auto first = program.checkpoints.front();
  plan.step_template.assign(program.sequence.gates().begin(),
                            program.sequence.gates().begin() + static_cast<std::ptrdiff_t>(first));
  return plan;
}

StepModel step_model_from_name(std::string_view name) {
  if (name == "ising") return StepModel::Ising;
  if (name == "xy") return StepModel::XY;
  if (name == "xyz") return StepModel::XYZ;
  throw std::invalid_argument("unknown step model '" + std::string(name) + "'");
}

CompiledProgram compile_model_steps(StepModel kind, double resolution, std::size_t steps, const StepCouplings& c) {
  require_steps(steps);
  if (!(resolution > 0.0)) throw CompileError("resolution must be positive");
  CompiledProgram prog;
  prog.sequence = GateSequence(2);
  WeightedPauliSum target(2);
  target.add(c.field, "ZI").add(c.field, "IZ").add(c.jx, "XX");
  if (kind != StepModel::Ising) target.add(c.jy, "YY");
  if (kind == StepModel::XYZ) target.add(c.jz, "ZZ");

  auto o4 = [&](double j, double phi) {
    if (j < 0.0) throw CompileError("fixed step templates need non-negative couplings");
    return GateOp::o4(j * resolution, phi);
  };
  for (std::size_t s = 0; s < steps; ++s) {
    const auto from = prog.sequence.size();
    prog.sequence.append(wrapped_o2(c.field * resolution));  // C
    prog.sequence.append(o4(c.jx, 0.0));                      // D
    if (kind != StepModel::Ising) prog.sequence.append(o4(c.jy, kPi / 2));  // E
    if (kind == StepModel::XYZ) {
      prog.sequence.append(GateOp::o3(kPi / 4, 0.0));  // F
      prog.sequence.append(o4(c.jz, kPi / 2));
      prog.sequence.append(GateOp::o3(kPi / 4, 0.0));  // F
      prog.sequence.append(GateOp::o4(kPi / 2, 0.0));  // cancels F·F = -X⊗X
    }
    close_step(prog, from);
  }
  static const char* names[] = {"ising", "xy", "xyz"};
  prog.target_id = std::string("model_steps:") + names[static_cast<int>(kind)] + ":steps=" + std::to_string(steps);
  prog.target_model = target;
  prog.target_theta = resolution * static_cast<double>(steps);
  prog.check_invariants();
  return prog;
}

std::vector<std::size_t> ramp_schedule(const RampSpec& ramp, std::size_t steps, double resolution) {
  require_steps(steps);
  ramp.validate();
  if (!(resolution > 0.0)) throw CompileError("resolution must be positive");
  const double dt = ramp.theta_total / static_cast<double>(steps);
  std::vector<std::size_t> d;
  for (std::size_t k = 0; k < steps; ++k) {
    const double mean_j = ramp.coupling_at(dt * (static_cast<double>(k) + 0.5));
    if (mean_j < 0.0) throw CompileError("ramp coupling must stay non-negative");
    d.push_back(static_cast<std::size_t>(std::llround(mean_j * dt / resolution)));
  }
  return d;
}

CompiledProgram compile_time_dependent(const RampSpec& ramp, std::size_t steps, double resolution) {
  const auto schedule = ramp_schedule(ramp, steps, resolution);
  const double dt = ramp.theta_total / static_cast<double>(steps);
  CompiledProgram prog;
  prog.sequence = GateSequence(2);
  for (auto d : schedule) {
    const auto from = prog.sequence.size();
    for (std::size_t k = 0; k < d; ++k) prog.sequence.append(GateOp::o4(resolution, 0.0));
    prog.sequence.append(wrapped_o2(ramp.field * dt));
    close_step(prog, from);
  }
  prog.target_id = "ramp:steps=" + std::to_string(steps);
  prog.target_ramp = ramp;
  prog.target_theta = ramp.theta_total;
  prog.check_invariants();
  return prog;
}

CompiledProgram compile_coupling_graph(const CouplingGraph& graph, double theta, const GraphCompileOptions& options) {
  if (!std::isfinite(theta) || theta < 0.0) throw CompileError("total phase must be finite and non-negative");
  const auto dec = decompose_coupling_graph(graph, options);
  CompiledProgram prog;
  prog.sequence = GateSequence(graph.spin_count());
  emit_graph_layers(prog.sequence, dec, theta, graph.phi());
  if (!prog.sequence.empty()) close_step(prog, 0);
  prog.target_id = "coupling_graph";
  prog.target_model = coupling_graph_model(graph);
  prog.target_theta = theta;
  prog.check_invariants();
  return prog;
}

void emit_many_body(GateSequence& seq, const PauliString& p, double theta) {
  if (p.size() != seq.spin_count()) throw DimensionError("string length does not match program");
  const auto plan = plan_many_body(p);
  if (plan.frame_change) seq.append(GateOp::o3(kPi / 4, 0.0));
  seq.append(GateOp::o4(kPi / 4, 0.0));
  seq.append(wrapped_o1(plan.sign * theta, plan.site));
  seq.append(GateOp::o4(kPi / 4, 0.0));
  if (plan.even_correction) seq.append(GateOp::o3(kPi / 2, 0.0));
  if (plan.frame_change) seq.append(GateOp::o3(kPi / 4, kPi));
}

CompiledProgram compile_many_body(const PauliString& p, double theta) {
  if (!std::isfinite(theta)) throw CompileError("phase must be finite");
  CompiledProgram prog;
  prog.sequence = GateSequence(p.size());
  emit_many_body(prog.sequence, p, theta);
  close_step(prog, 0);
  prog.target_id = "many_body:" + p.str();
  prog.target_model = many_body_model(p, 1.0);
  prog.target_theta = theta;
  prog.check_invariants();
  return prog;
}

CompiledProgram compile_many_body_with_field(const PauliString& p, const FieldSpec& field, double resolution,
                                             std::size_t steps, double strength) {
  if (field.axis == FieldSpec::Axis::Z) throw CompileError("many-body field must be transverse");
  plan_many_body(p);
  CompiledProgram prog;
  prog.sequence = GateSequence(p.size());
  for (std::size_t s = 0; s < steps; ++s) {
    const auto from = prog.sequence.size();
    emit_many_body(prog.sequence, p, strength * resolution);
    if (field.strength != 0.0) prog.sequence.append(signed_o3(field.strength * resolution, field.plane_angle()));
    close_step(prog, from);
  }
  prog.target_id = "many_body_field:" + p.str() + ":steps=" + std::to_string(steps);
  prog.target_model = many_body_model(p, strength, field);
  prog.target_theta = resolution * static_cast<double>(steps);
  prog.check_invariants();
  return prog;
}

}  // namespace trotterion
