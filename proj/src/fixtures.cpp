#include "trotterion/fixtures.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace trotterion {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

}  // namespace

Measured parse_measured(std::string_view text) {
  const auto open = text.find('(');
  const auto number = text.substr(0, open);
  Measured m;
  const auto res = std::from_chars(number.data(), number.data() + number.size(), m.value);
  if (res.ec != std::errc{} || res.ptr != number.data() + number.size()) {
    throw ConfigError("malformed measurement '" + std::string(text) + "'");
  }
  if (open == std::string_view::npos) return m;
  const auto close = text.find(')', open);
  if (close == std::string_view::npos || close != text.size() - 1) {
    throw ConfigError("malformed uncertainty in '" + std::string(text) + "'");
  }
  const auto digits = text.substr(open + 1, close - open - 1);
  unsigned unc = 0;
  const auto r2 = std::from_chars(digits.data(), digits.data() + digits.size(), unc);
  if (r2.ec != std::errc{} || r2.ptr != digits.data() + digits.size()) {
    throw ConfigError("malformed uncertainty in '" + std::string(text) + "'");
  }
  const auto dot = number.find('.');
  const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(number.size() - dot - 1);
  m.uncertainty = unc * std::pow(10.0, -decimals);
  return m;
}

FixtureTable parse_fixture(std::string_view csv_text, std::string name) {
  std::istringstream in{std::string(csv_text)};
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("fixture '" + name + "' is empty");
  const auto header = split_csv_line(line);
  int input_col = -1;
  int fidelity_col = -1;
  std::vector<int> parity_cols;
  std::vector<int> population_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& h = header[c];
    const int ci = static_cast<int>(c);
    if (h == "input") {
      input_col = ci;
    } else if (h == "fidelity") {
      fidelity_col = ci;
    } else if (h.rfind("parity_", 0) == 0) {
      parity_cols.push_back(ci);
    } else if (h.rfind("population_", 0) == 0) {
      population_cols.push_back(ci);
    } else {
      throw ConfigError("fixture '" + name + "': unknown column '" + h + "'");
    }
  }
  if (input_col < 0 || fidelity_col < 0) throw ConfigError("fixture '" + name + "' needs input and fidelity columns");
  if (!parity_cols.empty() && population_cols.size() != 2) {
    throw ConfigError("fixture '" + name + "': parity tables need two population columns");
  }
  FixtureTable t;
  t.name = std::move(name);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ConfigError("fixture '" + t.name + "' line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells");
    }
    FixtureRow row;
    row.input = cells[static_cast<std::size_t>(input_col)];
    row.fidelity = parse_measured(cells[static_cast<std::size_t>(fidelity_col)]);
    for (int c : parity_cols) row.parities.push_back(parse_measured(cells[static_cast<std::size_t>(c)]));
    for (int c : population_cols) row.populations.push_back(parse_measured(cells[static_cast<std::size_t>(c)]));
    t.rows.push_back(std::move(row));
  }
  if (t.rows.empty()) throw ConfigError("fixture '" + t.name + "' has no rows");
  return t;
}

FixtureTable load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fixture(buf.str(), path.stem().string());
}

Measured ghz_row_fidelity(const FixtureRow& row, double theta) {
  if (row.populations.size() != 2) throw ConfigError("GHZ row needs two populations");
  GhzMeasurementRecord rec;
  rec.theta = theta;
  rec.p_zero = row.populations[0].value;
  rec.p_one = row.populations[1].value;
  for (const auto& q : row.parities) rec.parities.push_back(q.value);
  rec.signs = alternating_signs(row.parities.size());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double k = c * s / static_cast<double>(row.parities.size());
  double var = std::pow(c * c * row.populations[0].uncertainty, 2) + std::pow(s * s * row.populations[1].uncertainty, 2);
  for (const auto& q : row.parities) var += std::pow(k * q.uncertainty, 2);
  return {ghz_fidelity(rec), std::sqrt(var)};
}

TruthTable to_truth_table(const FixtureTable& table, double theta) {
  TruthTable t;
  t.basis_label = table.name;
  for (const auto& row : table.rows) {
    const Measured f = row.parities.empty() ? row.fidelity : ghz_row_fidelity(row, theta);
    t.rows.push_back({row.input, f.value, f.uncertainty});
  }
  return t;
}

BoundReport bound_from_tables(const std::vector<FixtureTable>& tables, double theta) {
  TruthTable first;
  TruthTable second;
  for (const auto& table : tables) {
    auto& dest = table.has_parities() ? second : first;
    const auto t = to_truth_table(table, theta);
    dest.rows.insert(dest.rows.end(), t.rows.begin(), t.rows.end());
  }
  if (first.rows.empty() || second.rows.empty()) {
    throw ConfigError("bounds need at least one table without and one with parity columns");
  }
  BoundReport r;
  r.f1 = first.mean_fidelity();
  r.f1_uncertainty = first.mean_uncertainty();
  r.f2 = second.mean_fidelity();
  r.f2_uncertainty = second.mean_uncertainty();
  r.f1_rows = first.rows.size();
  r.f2_rows = second.rows.size();
  r.bound = hofmann_bounds(r.f1, r.f2, r.f1_uncertainty, r.f2_uncertainty);
  return r;
}

std::vector<DecoherenceGroup> decoherence_group_analysis(const std::vector<FixtureTable>& tables) {
  std::map<int, DecoherenceGroup, std::greater<>> groups;
  for (const auto& table : tables) {
    if (!table.has_parities()) throw ConfigError("table '" + table.name + "' has no parity columns");
    for (const auto& row : table.rows) {
      int zeros = 0;
      int ones = 0;
      for (char c : row.input) {
        zeros += c == '0';
        ones += c == '1';
      }
      if (zeros + ones == 0) throw ConfigError("input label '" + row.input + "' is not a basis string");
      if (row.populations.size() != 2) throw ConfigError("row '" + row.input + "' needs two populations");
      double par = 0.0;
      for (const auto& q : row.parities) par += std::abs(q.value);
      par /= static_cast<double>(row.parities.size());
      auto& g = groups[std::abs(zeros - ones)];
      g.imbalance = std::abs(zeros - ones);
      ++g.rows;
      g.mean_abs_parity += par;
      g.mean_total_population += row.populations[0].value + row.populations[1].value;
    }
  }
  std::vector<DecoherenceGroup> out;
  for (auto& [key, g] : groups) {
    g.mean_abs_parity /= static_cast<double>(g.rows);
    g.mean_total_population /= static_cast<double>(g.rows);
    out.push_back(g);
  }
  return out;
}

}  // namespace trotterion
