#pragma once

#include "trotterion/gates.hpp"

#include <string>
#include <vector>

namespace trotterion {

double state_fidelity(const StateVector& a, const StateVector& b);
double state_fidelity(const StateVector& a, const DensityMatrix& b);
double state_fidelity(const DensityMatrix& a, const StateVector& b);
/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double state_fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// |Tr(U†V)|² / d². Throws if either input is not unitary within 1e-6.
double process_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// Concurrence squared of a two-spin state.
double tangle2(const StateVector& psi);
double tangle2(const DensityMatrix& rho);

/// True iff |<a_i|b_j>|² = 1/N for every pair, with N the state dimension.
bool complementary_check(const std::vector<StateVector>& a, const std::vector<StateVector>& b, double tol = 1e-9);

struct TruthTableRow {
  std::string input;
  double fidelity = 0.0;
  double uncertainty = 0.0;
};

struct TruthTable {
  std::string basis_label;
  std::vector<TruthTableRow> rows;

  double mean_fidelity() const;
  // Row uncertainties combined in quadrature, divided by the row count.
  double mean_uncertainty() const;
};

struct LabelledState {
  std::string label;
  StateVector state;
};

/// Per input, |<U ψ | program ψ>|² computed exactly.
TruthTable truth_table(const GateSequence& program, const std::vector<LabelledState>& basis,
                       const UnitaryMatrix& reference, std::string basis_label = {});

struct FidelityBound {
  double lower = 0.0;
  double upper = 0.0;
  double lower_uncertainty = 0.0;
  double upper_uncertainty = 0.0;
};

/// [F1 + F2 - 1, min(F1, F2)]
FidelityBound hofmann_bounds(double f1, double f2, double sigma1 = 0.0, double sigma2 = 0.0);

/// Target cosθ|0…0> + e^{iχ} sinθ |1…1>; parities measured at the angles
/// from ghz_analysis_angles with signs alternating from +1.
struct GhzMeasurementRecord {
  double theta = kPi / 4;
  double chi = -kPi / 2;
  double p_zero = 0.0;
  double p_one = 0.0;
  std::vector<double> parities;
  std::vector<int> signs;

  void validate() const;
};

double ghz_fidelity(const GhzMeasurementRecord& record);

/// <Z…Z> after O3(π/4, φ).
double ghz_parity_observable(const StateVector& psi, double phi);
double ghz_parity_observable(const DensityMatrix& rho, double phi);

/// φ_i = χ/n - π/2 + iπ/n, i = 0..n-1
std::vector<double> ghz_analysis_angles(std::size_t n, double chi);
std::vector<int> alternating_signs(std::size_t n);

GhzMeasurementRecord ghz_record_from_state(const StateVector& psi, double theta, double chi);

StateVector ghz_target(std::size_t n, double theta, double chi);

}  // namespace trotterion
