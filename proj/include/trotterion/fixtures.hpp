#pragma once

#include "trotterion/metrics.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace trotterion {

/// A printed measurement such as "0.88(4)": value 0.88, uncertainty 0.04.
struct Measured {
  double value = 0.0;
  double uncertainty = 0.0;
};

Measured parse_measured(std::string_view text);

struct FixtureRow {
  std::string input;
  std::vector<Measured> parities;
  std::vector<Measured> populations;  // P(0…0), P(1…1)
  Measured fidelity;
};

struct FixtureTable {
  std::string name;
  std::vector<FixtureRow> rows;

  bool has_parities() const { return !rows.empty() && !rows.front().parities.empty(); }
};

FixtureTable parse_fixture(std::string_view csv_text, std::string name = {});
FixtureTable load_fixture(const std::filesystem::path& path);

/// Row fidelity from the GHZ formula, with the uncertainty propagated in
/// quadrature from the printed parities and populations.
Measured ghz_row_fidelity(const FixtureRow& row, double theta);

/// Tables with parity columns get their row fidelities recomputed; others
/// use the printed values.
TruthTable to_truth_table(const FixtureTable& table, double theta);

struct BoundReport {
  double f1 = 0.0;
  double f1_uncertainty = 0.0;
  double f2 = 0.0;
  double f2_uncertainty = 0.0;
  std::size_t f1_rows = 0;
  std::size_t f2_rows = 0;
  FidelityBound bound;
};

/// Pools tables without parity columns into F1 and those with parity
/// columns into F2.
BoundReport bound_from_tables(const std::vector<FixtureTable>& tables, double theta);

struct DecoherenceGroup {
  int imbalance = 0;  // |#0 - #1| of the input label
  std::size_t rows = 0;
  double mean_abs_parity = 0.0;
  double mean_total_population = 0.0;
};

/// Groups GHZ-basis rows by input imbalance, largest imbalance first.
std::vector<DecoherenceGroup> decoherence_group_analysis(const std::vector<FixtureTable>& tables);

}  // namespace trotterion
