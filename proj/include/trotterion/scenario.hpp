#pragma once

#include "trotterion/compiler.hpp"
#include "trotterion/noise.hpp"
#include "trotterion/spectral.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace trotterion {

inline constexpr int kScenarioSchema = 1;

struct ModelSpec {
  std::string preset;  // ising2 xy2 xyz2 long_range graph many_body ramp
  std::size_t n = 2;
  double b = 0.0;
  double j = 0.0;
  RealMatrix couplings;
  double phi = 0.0;
  std::optional<FieldSpec> field;
  std::string pauli;
  double strength = 1.0;
  RampSpec ramp;

  std::size_t spin_count() const;
  WeightedPauliSum hamiltonian() const;
};

struct CompileSpec {
  // first_order second_order model_steps time_dependent many_body many_body_field
  std::string method = "first_order";
  std::size_t steps = 1;
  std::optional<double> theta;       // total phase
  std::optional<double> resolution;  // per-step phase
  std::string step_model = "ising";
  bool fields_first = false;
  std::size_t max_layers = 0;

  double step_resolution() const;
};

struct SpectrumSpec {
  std::string observable;
  std::size_t zero_pad = 1;
  bool hann = false;
};

struct Scenario {
  int schema = kScenarioSchema;
  std::string name;
  std::string description;
  ModelSpec model;
  CompileSpec compile;
  std::string initial_state;
  std::vector<std::string> observables;
  std::size_t exact_points = 64;
  std::optional<NoiseParams> noise;
  std::optional<std::uint64_t> seed;
  std::optional<double> min_process_fidelity;
  std::optional<SpectrumSpec> spectrum;
};

/// Throws ConfigError on schema violations.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

struct ResultRow {
  double theta = 0.0;
  std::string variant;  // exact, digital, noisy, noisy_err
  std::vector<double> values;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<ResultRow> rows;

  /// theta,variant,<columns…> with 9 significant digits.
  std::string to_csv() const;
  std::vector<double> column(const std::string& variant, const std::string& name) const;
  std::vector<double> thetas(const std::string& variant) const;
};

struct ScenarioResult {
  ResultTable table;
  std::string summary_json;
  std::optional<TraceSpectrum> spectrum;
  CompiledProgram program;  // full-length program (final point for parametric methods)
  double process_fidelity = 0.0;
  bool verified = true;
};

/// Full-length program for the scenario; steps_override replaces the step count.
CompiledProgram compile_scenario(const Scenario& s, std::optional<std::size_t> steps_override = std::nullopt);

ScenarioResult run_scenario(const Scenario& s, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Writes <name>.csv, <name>.summary.json and (if requested) <name>.spectrum.csv.
std::vector<std::filesystem::path> write_outputs(const Scenario& s, const ScenarioResult& r,
                                                 const std::filesystem::path& out_dir);

std::filesystem::path default_scenario_dir();
std::vector<std::filesystem::path> bundled_scenarios(const std::filesystem::path& dir = default_scenario_dir());
/// Accepts a path to a JSON file or the stem of a bundled scenario.
std::filesystem::path resolve_scenario(const std::string& name_or_path,
                                       const std::filesystem::path& dir = default_scenario_dir());

std::string format_sig9(double v);

}  // namespace trotterion
