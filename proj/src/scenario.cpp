#include "trotterion/scenario.hpp"

#include "trotterion/metrics.hpp"
#include "trotterion/oracle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#ifndef TROTTERION_SCENARIO_DIR_DEFAULT
#define TROTTERION_SCENARIO_DIR_DEFAULT "scenarios"
#endif

namespace trotterion {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& context) {
  if (!obj.is_object()) throw ConfigError(context + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw ConfigError(context + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get_required(const json& obj, const char* key, const std::string& context) {
  if (!obj.contains(key)) throw ConfigError(context + ": missing required key '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(context + "." + key + ": " + e.what());
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& context) {
  if (!obj.contains(key)) return fallback;
  return get_required<T>(obj, key, context);
}

double get_number(const json& obj, const char* key, const std::string& context) {
  const auto& v = obj.contains(key) ? obj.at(key) : throw ConfigError(context + ": missing required key '" + key + "'");
  if (!v.is_number()) throw ConfigError(context + "." + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(context + "." + key + " must be finite");
  return x;
}

double get_number_or(const json& obj, const char* key, double fallback, const std::string& context) {
  return obj.contains(key) ? get_number(obj, key, context) : fallback;
}

std::size_t get_count(const json& obj, const char* key, const std::string& context) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(context + "." + key + " must be a non-negative integer");
  return v.get<std::size_t>();
}

FieldSpec parse_field(const json& f, const std::string& context) {
  check_keys(f, {"axis", "strength"}, context);
  FieldSpec spec;
  spec.strength = get_number(f, "strength", context);
  if (!f.contains("axis")) throw ConfigError(context + ": missing required key 'axis'");
  const auto& axis = f.at("axis");
  if (axis.is_number()) {
    spec.axis = FieldSpec::Axis::InPlane;
    spec.phi = axis.get<double>();
  } else if (axis == "x") {
    spec.axis = FieldSpec::Axis::X;
  } else if (axis == "y") {
    spec.axis = FieldSpec::Axis::Y;
  } else if (axis == "z") {
    spec.axis = FieldSpec::Axis::Z;
  } else {
    throw ConfigError(context + ".axis must be x, y, z or an angle");
  }
  return spec;
}

ModelSpec parse_model(const json& m) {
  const std::string ctx = "model";
  if (!m.is_object()) throw ConfigError("model must be an object");
  ModelSpec spec;
  spec.preset = get_required<std::string>(m, "preset", ctx);
  if (spec.preset == "ising2" || spec.preset == "xy2" || spec.preset == "xyz2") {
    check_keys(m, {"preset", "B", "J"}, ctx);
    spec.b = get_number(m, "B", ctx);
    spec.j = get_number(m, "J", ctx);
  } else if (spec.preset == "long_range") {
    check_keys(m, {"preset", "n", "B", "J"}, ctx);
    spec.n = get_count(m, "n", ctx);
    if (spec.n < 2 || spec.n > kMaxSpins) throw ConfigError("model.n must be between 2 and 12");
    spec.b = get_number(m, "B", ctx);
    spec.j = get_number(m, "J", ctx);
  } else if (spec.preset == "graph") {
    check_keys(m, {"preset", "J", "phi", "field"}, ctx);
    const auto& rows = m.contains("J") ? m.at("J") : throw ConfigError("model: missing required key 'J'");
    if (!rows.is_array() || rows.empty()) throw ConfigError("model.J must be a square array of arrays");
    const auto n = static_cast<Eigen::Index>(rows.size());
    spec.couplings = RealMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ConfigError("model.J must be square");
      for (Eigen::Index k = 0; k < n; ++k) {
        if (!row.at(static_cast<std::size_t>(k)).is_number()) throw ConfigError("model.J entries must be numbers");
        spec.couplings(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
      }
    }
    spec.n = static_cast<std::size_t>(n);
    spec.phi = get_number_or(m, "phi", 0.0, ctx);
    if (m.contains("field")) spec.field = parse_field(m.at("field"), "model.field");
  } else if (spec.preset == "many_body") {
    check_keys(m, {"preset", "string", "strength", "field"}, ctx);
    spec.pauli = get_required<std::string>(m, "string", ctx);
    spec.n = spec.pauli.size();
    spec.strength = get_number_or(m, "strength", 1.0, ctx);
    if (m.contains("field")) spec.field = parse_field(m.at("field"), "model.field");
  } else if (spec.preset == "ramp") {
    check_keys(m, {"preset", "B", "J_start", "J_end", "theta_total"}, ctx);
    spec.ramp.field = get_number(m, "B", ctx);
    spec.ramp.j_start = get_number(m, "J_start", ctx);
    spec.ramp.j_end = get_number(m, "J_end", ctx);
    spec.ramp.theta_total = get_number(m, "theta_total", ctx);
    if (!(spec.ramp.theta_total > 0.0)) throw ConfigError("model.theta_total must be positive");
  } else {
    throw ConfigError("unknown model preset '" + spec.preset + "'");
  }
  try {
    spec.hamiltonian();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return spec;
}

CompileSpec parse_compile(const json& c) {
  const std::string ctx = "compile";
  check_keys(c, {"method", "steps", "theta", "resolution", "step_model", "fields_first", "max_layers"}, ctx);
  CompileSpec spec;
  spec.method = get_required<std::string>(c, "method", ctx);
  static const std::set<std::string> methods = {"first_order",    "second_order", "model_steps",
                                                "time_dependent", "many_body",    "many_body_field"};
  if (!methods.count(spec.method)) throw ConfigError("unknown compile method '" + spec.method + "'");
  if (!c.contains("steps")) throw ConfigError("compile: missing required key 'steps'");
  spec.steps = get_count(c, "steps", ctx);
  if (c.contains("theta")) spec.theta = get_number(c, "theta", ctx);
  if (c.contains("resolution")) spec.resolution = get_number(c, "resolution", ctx);
  if (spec.theta && spec.resolution) throw ConfigError("compile: give either theta or resolution, not both");
  spec.step_model = get_or<std::string>(c, "step_model", "", ctx);
  spec.fields_first = get_or<bool>(c, "fields_first", false, ctx);
  if (c.contains("max_layers")) spec.max_layers = get_count(c, "max_layers", ctx);
  return spec;
}

NoiseParams parse_noise(const json& n) {
  const std::string ctx = "noise";
  check_keys(n, {"sigma_rel", "shots", "analytic", "miscalibration"}, ctx);
  NoiseParams p;
  p.sigma_rel = get_number_or(n, "sigma_rel", 0.0, ctx);
  if (n.contains("shots")) p.shots = get_count(n, "shots", ctx);
  p.analytic = get_or<bool>(n, "analytic", false, ctx);
  if (n.contains("miscalibration")) {
    const auto& m = n.at("miscalibration");
    if (!m.is_object()) throw ConfigError("noise.miscalibration must be an object");
    for (const auto& [kind, value] : m.items()) {
      if (!value.is_number()) throw ConfigError("noise.miscalibration values must be numbers");
      try {
        p.miscalibration[gate_kind_from_name(kind)] = value.get<double>();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("noise.miscalibration: ") + e.what());
      }
    }
  }
  p.validate();
  return p;
}

}  // namespace

std::size_t ModelSpec::spin_count() const { return preset == "ramp" ? 2 : n; }

WeightedPauliSum ModelSpec::hamiltonian() const {
  if (preset == "ising2") return ising2(b, j);
  if (preset == "xy2") return xy2(b, j);
  if (preset == "xyz2") return xyz2(b, j);
  if (preset == "long_range") return long_range_ising(n, b, j).hamiltonian;
  if (preset == "graph") return coupling_graph_model(CouplingGraph(couplings, phi), field);
  if (preset == "many_body") return many_body_model(PauliString::parse(pauli), strength, field);
  if (preset == "ramp") return ramp.hamiltonian_at(ramp.theta_total);
  throw ConfigError("unknown model preset '" + preset + "'");
}

double CompileSpec::step_resolution() const {
  if (resolution) return *resolution;
  if (theta) return steps ? *theta / static_cast<double>(steps) : 0.0;
  return kPi / 16;
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  check_keys(doc,
             {"schema", "name", "description", "model", "compile", "initial_state", "observables", "exact_points",
              "noise", "seed", "verify", "spectrum"},
             "scenario");
  Scenario s;
  s.schema = get_required<int>(doc, "schema", "scenario");
  if (s.schema != kScenarioSchema) throw ConfigError("unsupported scenario schema " + std::to_string(s.schema));
  s.name = get_required<std::string>(doc, "name", "scenario");
  if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos) throw ConfigError("scenario name must be a plain file stem");
  s.description = get_or<std::string>(doc, "description", "", "scenario");
  if (!doc.contains("model")) throw ConfigError("scenario: missing required key 'model'");
  s.model = parse_model(doc.at("model"));
  if (!doc.contains("compile")) throw ConfigError("scenario: missing required key 'compile'");
  s.compile = parse_compile(doc.at("compile"));
  s.initial_state = get_required<std::string>(doc, "initial_state", "scenario");
  if (s.initial_state.size() != s.model.spin_count()) throw ConfigError("initial_state must have one character per spin");
  try {
    product_state(s.initial_state);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("initial_state: ") + e.what());
  }
  s.observables = get_required<std::vector<std::string>>(doc, "observables", "scenario");
  if (s.observables.empty()) throw ConfigError("scenario needs at least one observable");
  for (const auto& o : s.observables) Observable::parse(o, s.model.spin_count());
  if (doc.contains("exact_points")) s.exact_points = get_count(doc, "exact_points", "scenario");
  if (s.exact_points < 2) throw ConfigError("exact_points must be at least 2");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    s.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("noise")) {
    s.noise = parse_noise(doc.at("noise"));
    if (!s.seed) throw ConfigError("a seed is mandatory when a noise block is present");
  }
  if (doc.contains("verify")) {
    const auto& v = doc.at("verify");
    check_keys(v, {"min_process_fidelity"}, "verify");
    s.min_process_fidelity = get_number(v, "min_process_fidelity", "verify");
  }
  if (doc.contains("spectrum")) {
    const auto& sp = doc.at("spectrum");
    check_keys(sp, {"observable", "zero_pad", "hann"}, "spectrum");
    SpectrumSpec spec;
    spec.observable = get_required<std::string>(sp, "observable", "spectrum");
    if (sp.contains("zero_pad")) spec.zero_pad = get_count(sp, "zero_pad", "spectrum");
    if (spec.zero_pad == 0) throw ConfigError("spectrum.zero_pad must be at least 1");
    spec.hann = get_or<bool>(sp, "hann", false, "spectrum");
    s.spectrum = spec;
  }

  const auto& m = s.compile.method;
  const auto& p = s.model.preset;
  const bool two_spin_preset = p == "ising2" || p == "xy2" || p == "xyz2";
  if ((m == "first_order" || m == "second_order") && p == "ramp") throw ConfigError(m + " cannot compile a ramp model");
  if (m == "model_steps" && !two_spin_preset) throw ConfigError("model_steps needs an ising2, xy2 or xyz2 model");
  if (m == "time_dependent" && p != "ramp") throw ConfigError("time_dependent needs a ramp model");
  if ((m == "many_body" || m == "many_body_field") && p != "many_body") throw ConfigError(m + " needs a many_body model");
  if (m == "many_body" && s.model.field && s.model.field->strength != 0.0) {
    throw ConfigError("many_body compiles the bare string; use many_body_field for a field");
  }
  if ((m == "first_order" || m == "second_order") && !s.compile.theta && !s.compile.resolution) {
    throw ConfigError(m + " needs theta or resolution");
  }
  if (m == "time_dependent" && s.compile.theta) throw ConfigError("time_dependent takes its total phase from the ramp");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

StepModel step_model_for(const Scenario& s) {
  if (!s.compile.step_model.empty()) {
    try {
      return step_model_from_name(s.compile.step_model);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (s.model.preset == "xy2") return StepModel::XY;
  if (s.model.preset == "xyz2") return StepModel::XYZ;
  return StepModel::Ising;
}

double total_theta(const CompileSpec& c, std::size_t steps) {
  return c.theta ? *c.theta : c.step_resolution() * static_cast<double>(steps);
}

struct DigitalPoint {
  double theta = 0.0;
  GateSequence sequence;
};

// Stroboscopic programs expose their prefixes; the parametric many-body
// method compiles a fresh program per point.
std::vector<DigitalPoint> digital_points(const Scenario& s, const CompiledProgram& program) {
  std::vector<DigitalPoint> pts;
  if (s.compile.method == "many_body") {
    const auto p = PauliString::parse(s.model.pauli);
    const double r = s.compile.step_resolution();
    for (std::size_t k = 0; k <= s.compile.steps; ++k) {
      const double th = r * static_cast<double>(k);
      pts.push_back({th, compile_many_body(p, s.model.strength * th).sequence});
    }
    return pts;
  }
  for (std::size_t k = 0; k <= program.steps(); ++k) pts.push_back({program.theta_at(k), program.at_checkpoint(k)});
  return pts;
}

UnitaryMatrix exact_unitary(const CompiledProgram& program, double theta) {
  if (program.target_ramp) return time_ordered_propagator(*program.target_ramp, theta, 2000);
  return propagator(*program.target_model, theta);
}

}  // namespace

CompiledProgram compile_scenario(const Scenario& s, std::optional<std::size_t> steps_override) {
  const std::size_t steps = steps_override.value_or(s.compile.steps);
  if (steps == 0) throw CompileError("step count must be at least 1");
  const auto& c = s.compile;
  const auto& m = s.model;
  if (c.method == "first_order" || c.method == "second_order") {
    CompileOptions opt;
    opt.fields_first = c.fields_first;
    opt.graph.max_layers = c.max_layers;
    const double theta = c.theta ? *c.theta : c.step_resolution() * static_cast<double>(steps);
    return c.method == "first_order" ? compile_first_order(m.hamiltonian(), theta, steps, opt)
                                     : compile_second_order(m.hamiltonian(), theta, steps, opt);
  }
  if (c.method == "model_steps") {
    const double r = c.theta ? *c.theta / static_cast<double>(steps) : c.step_resolution();
    return compile_model_steps(step_model_for(s), r, steps, {m.b, m.j, m.j, m.j});
  }
  if (c.method == "time_dependent") return compile_time_dependent(m.ramp, steps, c.step_resolution());
  const auto p = PauliString::parse(m.pauli);
  if (c.method == "many_body") {
    const double theta = total_theta(c, steps);
    CompiledProgram prog = compile_many_body(p, m.strength * theta);
    prog.target_model = many_body_model(p, m.strength);
    prog.target_theta = theta;
    return prog;
  }
  const FieldSpec field = m.field.value_or(FieldSpec::y(0.0));
  const double r = c.theta ? *c.theta / static_cast<double>(steps) : c.step_resolution();
  return compile_many_body_with_field(p, field, r, steps, m.strength);
}

std::string format_sig9(double v) {
  // round-off residue below 1e-14 prints as 0 so files do not depend on summation order
  if (std::abs(v) < 1e-14) return "0";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  out << "theta,variant";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (const auto& r : rows) {
    out << format_sig9(r.theta) << ',' << r.variant;
    for (double v : r.values) out << ',' << format_sig9(v);
    out << '\n';
  }
  return out.str();
}

std::vector<double> ResultTable::column(const std::string& variant, const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
  const auto idx = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.variant == variant) out.push_back(r.values[idx]);
  }
  return out;
}

std::vector<double> ResultTable::thetas(const std::string& variant) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.variant == variant) out.push_back(r.theta);
  }
  return out;
}

ScenarioResult run_scenario(const Scenario& s, std::optional<std::uint64_t> seed_override) {
  ScenarioResult result;
  result.program = compile_scenario(s);
  const auto& program = result.program;
  const auto n = s.model.spin_count();
  const StateVector psi0 = product_state(s.initial_state);

  std::vector<Observable> obs;
  for (const auto& spec : s.observables) {
    for (auto& o : Observable::parse(spec, n)) obs.push_back(std::move(o));
  }
  result.table.columns.clear();
  for (const auto& o : obs) result.table.columns.push_back(o.label);

  auto evaluate_all = [&](const StateVector& psi) {
    std::vector<double> v;
    for (const auto& o : obs) v.push_back(o.evaluate(psi));
    return v;
  };

  const auto points = digital_points(s, program);
  const double theta_final = points.back().theta;
  std::vector<ResultRow> rows;

  // exact curve
  const std::size_t ne = s.exact_points;
  if (program.target_ramp) {
    for (std::size_t k = 0; k <= ne; ++k) {
      const double th = theta_final * static_cast<double>(k) / static_cast<double>(ne);
      const StateVector psi = k == 0 ? psi0 : StateVector(time_ordered_propagator(*program.target_ramp, th, 2000) * psi0);
      rows.push_back({th, "exact", evaluate_all(psi)});
    }
  } else {
    const auto spec = spectrum(*program.target_model);
    const Eigen::VectorXcd c0 = spec.eigenvectors.adjoint() * psi0;
    for (std::size_t k = 0; k <= ne; ++k) {
      const double th = theta_final * static_cast<double>(k) / static_cast<double>(ne);
      const Eigen::VectorXcd phases = spec.eigenvalues.unaryExpr([th](double e) { return std::polar(1.0, -th * e); });
      const StateVector psi = spec.eigenvectors * (phases.cwiseProduct(c0));
      rows.push_back({th, "exact", evaluate_all(psi)});
    }
  }

  // ideal digitized points
  std::vector<StateVector> digital_states;
  for (const auto& pt : points) {
    digital_states.push_back(apply_sequence(psi0, pt.sequence));
    rows.push_back({pt.theta, "digital", evaluate_all(digital_states.back())});
  }

  // noisy estimates
  std::optional<std::uint64_t> seed = seed_override ? seed_override : s.seed;
  if (s.noise) {
    NoiseParams params = *s.noise;
    params.seed = *seed;
    auto add_rows = [&](const ShotEnsemble& e, std::size_t p, double th) {
      rows.push_back({th, "noisy", e.mean[p]});
      rows.push_back({th, "noisy_err", e.error[p]});
    };
    if (s.compile.method == "many_body") {
      for (std::size_t k = 0; k < points.size(); ++k) {
        CompiledProgram single;
        single.sequence = points[k].sequence;
        single.checkpoints = {points[k].sequence.size()};
        single.target_theta = points[k].theta;
        if (single.sequence.empty()) single.checkpoints.clear();
        params.seed = *seed + k;
        const auto e = run_noisy_ensemble(single, psi0, obs, params);
        add_rows(e, e.mean.size() - 1, points[k].theta);
      }
    } else {
      const auto e = run_noisy_ensemble(program, psi0, obs, params);
      for (std::size_t p = 0; p < e.mean.size(); ++p) add_rows(e, p, e.thetas[p]);
    }
  }

  static const std::map<std::string, int> variant_rank = {{"exact", 0}, {"digital", 1}, {"noisy", 2}, {"noisy_err", 3}};
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.theta != b.theta) return a.theta < b.theta;
    return variant_rank.at(a.variant) < variant_rank.at(b.variant);
  });
  result.table.rows = std::move(rows);

  // verification against the exact propagator at the final point
  const UnitaryMatrix u_digital = sequence_unitary(points.back().sequence);
  const UnitaryMatrix u_exact = exact_unitary(program, theta_final);
  result.process_fidelity = process_fidelity(u_digital, u_exact);
  if (s.min_process_fidelity) result.verified = result.process_fidelity >= *s.min_process_fidelity;

  json summary;
  summary["schema"] = kScenarioSchema;
  summary["name"] = s.name;
  summary["spins"] = n;
  summary["method"] = s.compile.method;
  summary["steps"] = s.compile.steps;
  summary["theta_final"] = theta_final;
  const auto stats = sequence_stats(program.sequence);
  summary["gate_count"] = stats.gate_count;
  summary["wall_time_us"] = stats.wall_time_us;
  summary["process_fidelity"] = result.process_fidelity;
  summary["target"] = program.target_id;
  if (s.min_process_fidelity) {
    summary["min_process_fidelity"] = *s.min_process_fidelity;
    summary["verified"] = result.verified;
  }
  if (n == 2) summary["final_tangle"] = tangle2(digital_states.back());
  if (s.noise) {
    summary["noise"] = {{"sigma_rel", s.noise->sigma_rel}, {"shots", s.noise->shots}, {"analytic", s.noise->analytic}};
    json mis = json::object();
    for (const auto& [kind, rel] : s.noise->miscalibration) mis[gate_kind_name(kind)] = rel;
    summary["noise"]["miscalibration"] = mis;
  }
  if (seed) summary["seed"] = *seed;

  if (s.spectrum) {
    const auto it = std::find(result.table.columns.begin(), result.table.columns.end(), s.spectrum->observable);
    if (it == result.table.columns.end()) throw ConfigError("spectrum.observable '" + s.spectrum->observable + "' is not a column");
    const auto idx = static_cast<std::size_t>(it - result.table.columns.begin());
    std::vector<double> thetas;
    std::vector<double> values;
    for (std::size_t k = 0; k < points.size(); ++k) {
      thetas.push_back(points[k].theta);
      values.push_back(obs[idx].evaluate(digital_states[k]));
    }
    SpectrumOptions opt;
    opt.zero_pad_factor = s.spectrum->zero_pad;
    opt.hann_window = s.spectrum->hann;
    result.spectrum = spectrum_of_trace(ObservableTrace::from_grid(thetas, values, s.spectrum->observable), opt);
    json sp;
    sp["observable"] = s.spectrum->observable;
    sp["dominant_frequency"] = result.spectrum->dominant_frequency();
    sp["bin_width"] = result.spectrum->unpadded_bin_width;
    if (program.target_model) {
      json gaps = json::array();
      for (const auto& g : predicted_gaps(*program.target_model, psi0)) gaps.push_back({{"gap", g.gap}, {"weight", g.weight}});
      sp["predicted_gaps"] = gaps;
    }
    summary["spectrum"] = sp;
  }
  result.summary_json = summary.dump(2) + "\n";
  return result;
}

std::vector<std::filesystem::path> write_outputs(const Scenario& s, const ScenarioResult& r,
                                                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
    written.push_back(p);
  };
  write(out_dir / (s.name + ".csv"), r.table.to_csv());
  write(out_dir / (s.name + ".summary.json"), r.summary_json);
  if (r.spectrum) {
    std::ostringstream sp;
    sp << "frequency,amplitude\n";
    for (std::size_t k = 0; k < r.spectrum->frequency.size(); ++k) {
      sp << format_sig9(r.spectrum->frequency[k]) << ',' << format_sig9(r.spectrum->amplitude[k]) << '\n';
    }
    write(out_dir / (s.name + ".spectrum.csv"), sp.str());
  }
  return written;
}

std::filesystem::path default_scenario_dir() {
  if (const char* env = std::getenv("TROTTERION_SCENARIO_DIR")) return env;
  return TROTTERION_SCENARIO_DIR_DEFAULT;
}

std::vector<std::filesystem::path> bundled_scenarios(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path resolve_scenario(const std::string& name_or_path, const std::filesystem::path& dir) {
  const std::filesystem::path p(name_or_path);
  if (p.extension() == ".json" && std::filesystem::exists(p)) return p;
  const auto bundled = dir / (name_or_path + ".json");
  if (std::filesystem::exists(bundled)) return bundled;
  throw ConfigError("unknown scenario '" + name_or_path + "'");
}

}  // namespace trotterion
