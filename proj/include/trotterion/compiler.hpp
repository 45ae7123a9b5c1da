#pragma once

#include "trotterion/gates.hpp"
#include "trotterion/models.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trotterion {

enum class TrotterOrder { First = 1, Second = 2 };

struct TrotterPlan {
  TrotterOrder order = TrotterOrder::First;
  std::size_t steps = 1;
  double theta = 0.0;
  std::vector<GateOp> step_template;

  double resolution() const { return theta / static_cast<double>(steps); }
};

struct CompiledProgram {
  GateSequence sequence;
  std::vector<std::size_t> checkpoints;  // gate count after each digital step
  std::vector<std::string> step_labels;
  std::string target_id;
  // Exact reference when the target is time independent: exp(-i theta H).
  std::optional<WeightedPauliSum> target_model;
  double target_theta = 0.0;
  std::optional<RampSpec> target_ramp;

  std::size_t steps() const { return checkpoints.size(); }
  GateSequence at_checkpoint(std::size_t step) const;
  // Phase reached after the given number of steps.
  double theta_at(std::size_t step) const;
  // Throws std::logic_error if the checkpoint invariant does not hold.
  void check_invariants() const;
};

struct GraphCompileOptions {
  std::size_t max_layers = 0;  // 0 = no limit
  std::size_t search_budget = 300000;
  double tolerance = 1e-10;
};

struct CompileOptions {
  bool fields_first = false;
  GraphCompileOptions graph;
};

// A uniform coupling on the spins in `mask`, with spin k carrying sign
// (-1)^(bit k of `flips`).
struct GraphLayer {
  std::uint32_t mask = 0;
  std::uint32_t flips = 0;
  double weight = 0.0;
};

// One O4 block with a full-register sign pattern (mask = all spins).
struct SignLayer {
  std::uint32_t flips = 0;
  double weight = 0.0;
};

struct GraphDecomposition {
  std::vector<GraphLayer> layers;
  std::vector<SignLayer> schedule;  // lowered and ordered
  std::size_t gate_count = 0;       // O4 blocks + O1 refocusing pulses per application
};

GraphDecomposition decompose_coupling_graph(const CouplingGraph& graph, const GraphCompileOptions& options = {});

/// Appends the gates realising exp(-i scale Σ J_ij σφσφ) for a decomposition.
void emit_graph_layers(GateSequence& seq, const GraphDecomposition& dec, double scale, double phi);

CompiledProgram compile_first_order(const WeightedPauliSum& model, double theta, std::size_t steps,
                                    const CompileOptions& options = {});
CompiledProgram compile_second_order(const WeightedPauliSum& model, double theta, std::size_t steps,
                                     const CompileOptions& options = {});
TrotterPlan plan_of(const CompiledProgram& program, TrotterOrder order);

enum class StepModel { Ising, XY, XYZ };

struct StepCouplings {
  double field = 1.0;
  double jx = 1.0;
  double jy = 1.0;
  double jz = 1.0;
};

StepModel step_model_from_name(std::string_view name);

/// Fixed two-spin step templates: ising C·D, xy C·D·E, xyz C·D·E·F·E'·F·G.
CompiledProgram compile_model_steps(StepModel kind, double resolution, std::size_t steps,
                                    const StepCouplings& couplings = {});

/// d-gate count per step approximating the ramp's mean coupling.
std::vector<std::size_t> ramp_schedule(const RampSpec& ramp, std::size_t steps, double resolution);
CompiledProgram compile_time_dependent(const RampSpec& ramp, std::size_t steps, double resolution = kPi / 16);

CompiledProgram compile_coupling_graph(const CouplingGraph& graph, double theta, const GraphCompileOptions& options = {});

/// exp(-iθ p) for strings with one Z or Y site and X elsewhere, 3 <= n <= 6.
CompiledProgram compile_many_body(const PauliString& p, double theta);
void emit_many_body(GateSequence& seq, const PauliString& p, double theta);

CompiledProgram compile_many_body_with_field(const PauliString& p, const FieldSpec& field, double resolution,
                                             std::size_t steps, double strength = 1.0);

// Phase wrapping helpers (global phase only).
GateOp wrapped_o1(double theta, std::size_t target);
GateOp wrapped_o2(double theta);
GateOp signed_o3(double theta, double phi);

}  // namespace trotterion
