#pragma once

#include "trotterion/gates.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace trotterion {

/// χ in the Pauli basis; index m = Σ_j p_j 4^(n-1-j) with p ∈ {I,X,Y,Z} and
/// spin 0 as the leading character ("II, IX, IY, IZ, XI, …").
struct ProcessMatrix {
  std::size_t n = 0;
  Operator chi;

  std::string basis_label(std::size_t m) const;
};

struct TomographyOptions {
  std::optional<std::size_t> shots;  // per measurement setting; exact if empty
  std::uint64_t seed = 0;
  std::size_t projection_iterations = 2000;
};

ProcessMatrix chi_of_unitary(const UnitaryMatrix& u);

/// Prepares {|0>,|1>,|+>,|+i>}^n, measures in all 3^n Pauli settings,
/// inverts linearly and projects onto CPTP maps in the Frobenius metric.
ProcessMatrix simulate_qpt(const GateSequence& program, const TomographyOptions& options = {});

/// Nearest positive semidefinite, trace-preserving χ (Dykstra projection).
ProcessMatrix project_cptp(const ProcessMatrix& raw, std::size_t iterations = 2000);

double process_fidelity(const ProcessMatrix& chi, const UnitaryMatrix& u);
double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b);

// Σ χ_mn P_n† P_m - I, the trace-preservation residual.
double tp_residual(const ProcessMatrix& chi);

}  // namespace trotterion
