#include "trotterion/fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace trotterion;

namespace {

const std::filesystem::path dir = TROTTERION_FIXTURE_DIR;

std::vector<FixtureTable> load(std::initializer_list<const char*> names) {
  std::vector<FixtureTable> out;
  for (const char* n : names) out.push_back(load_fixture(dir / n));
  return out;
}

}  // namespace

TEST(Measured, ParsesParenthesisedUncertainty) {
  auto m = parse_measured("0.88(4)");
  EXPECT_DOUBLE_EQ(m.value, 0.88);
  EXPECT_NEAR(m.uncertainty, 0.04, 1e-15);
  m = parse_measured("-0.6(12)");
  EXPECT_DOUBLE_EQ(m.value, -0.6);
  EXPECT_NEAR(m.uncertainty, 1.2, 1e-15);
  EXPECT_DOUBLE_EQ(parse_measured("0.5").uncertainty, 0.0);
  EXPECT_THROW(parse_measured("0.5(x)"), ConfigError);
  EXPECT_THROW(parse_measured("abc"), ConfigError);
  EXPECT_THROW(parse_measured("0.5(3"), ConfigError);
}

TEST(FixtureParsing, RejectsMalformedTables) {
  EXPECT_THROW(parse_fixture("", "empty"), ConfigError);
  EXPECT_THROW(parse_fixture("input,bogus\n|0>,1\n", "x"), ConfigError);
  EXPECT_THROW(parse_fixture("input,fidelity\n|0>,0.9(1),3\n", "x"), ConfigError);
  EXPECT_THROW(parse_fixture("input,parity_1,population_1,fidelity\n|0>,0.1,0.2,0.3\n", "x"), ConfigError);
  EXPECT_THROW(load_fixture(dir / "missing.csv"), ConfigError);
}

TEST(FixtureParsing, BundledTablesLoad) {
  const auto t = load({"table_s1.csv", "table_s2.csv", "table_s3.csv", "table_s4.csv", "table_s5.csv", "table_s6.csv"});
  EXPECT_EQ(t[0].rows.size(), 8u);
  EXPECT_FALSE(t[0].has_parities());
  EXPECT_EQ(t[1].rows.size(), 8u);
  EXPECT_EQ(t[1].rows[0].parities.size(), 3u);
  EXPECT_EQ(t[4].rows[0].parities.size(), 6u);
  std::size_t f1 = t[2].rows.size() + t[3].rows.size();
  std::size_t f2 = t[4].rows.size() + t[5].rows.size();
  EXPECT_EQ(f1, 64u);
  EXPECT_EQ(f2, 64u);
}

TEST(GhzRowFidelity, RecomputedRowsMatchPrintedColumn) {
  const auto t = load_fixture(dir / "table_s2.csv");
  for (const auto& row : t.rows) {
    const auto f = ghz_row_fidelity(row, kPi / 4);
    EXPECT_NEAR(f.value, row.fidelity.value, 0.01) << row.input;
    EXPECT_GT(f.uncertainty, 0.0);
  }
  const auto& first = t.rows.front();
  // 0.5(P0+P1) + (1/6)(q1 - q2 + q3)
  const double expect = 0.5 * (0.48 + 0.48) + (0.88 + 0.89 + 0.86) / 6.0;
  EXPECT_NEAR(ghz_row_fidelity(first, kPi / 4).value, expect, 1e-12);
}

TEST(Bounds, ThreeSpinTables) {
  const auto r = bound_from_tables(load({"table_s1.csv", "table_s2.csv"}), kPi / 4);
  EXPECT_NEAR(r.f1, 0.9425, 1e-12);
  EXPECT_NEAR(r.bound.lower, 0.850, 0.002);
  EXPECT_NEAR(r.bound.upper, 0.908, 0.002);
  EXPECT_GT(r.bound.lower_uncertainty, 0.0);
}

TEST(Bounds, SixSpinTables) {
  const auto r = bound_from_tables(load({"table_s3.csv", "table_s4.csv", "table_s5.csv", "table_s6.csv"}), kPi / 4);
  EXPECT_NEAR(r.bound.lower, 0.559, 0.005);
  EXPECT_NEAR(r.bound.upper, 0.767, 0.005);
  EXPECT_EQ(r.f1_rows, 64u);
  EXPECT_EQ(r.f2_rows, 64u);
}

TEST(Bounds, PerfectSyntheticTablesGiveUnitInterval) {
  const auto a = parse_fixture("input,fidelity\n|0>,1.0(0)\n|1>,1.0\n", "a");
  const auto b = parse_fixture("input,parity_1,parity_2,population_1,population_2,fidelity\n|++>,1,-1,0.5,0.5,1\n", "b");
  const auto r = bound_from_tables({a, b}, kPi / 4);
  EXPECT_NEAR(r.bound.lower, 1.0, 1e-12);
  EXPECT_NEAR(r.bound.upper, 1.0, 1e-12);
}

TEST(Decoherence, GroupsOrderedByImbalance) {
  const auto g = decoherence_group_analysis(load({"table_s5.csv", "table_s6.csv"}));
  ASSERT_EQ(g.size(), 4u);
  const int imbalance[] = {6, 4, 2, 0};
  const double parity[] = {0.58, 0.6694, 0.7074, 0.7645};
  const double population[] = {0.78, 0.8308, 0.812, 0.827};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(g[k].imbalance, imbalance[k]);
    EXPECT_NEAR(g[k].mean_abs_parity, parity[k], 1e-4);
    EXPECT_NEAR(g[k].mean_total_population, population[k], 1e-4);
  }
  // balanced inputs keep the most coherence
  EXPECT_GT(g.back().mean_abs_parity, g.front().mean_abs_parity);
  EXPECT_THROW(decoherence_group_analysis(load({"table_s3.csv"})), ConfigError);
}
