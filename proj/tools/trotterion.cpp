// trotterion command-line front end.
#include "trotterion/fixtures.hpp"
#include "trotterion/scenario.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

namespace {

using namespace trotterion;

enum Exit : int { kOk = 0, kConfig = 2, kCompile = 3, kVerification = 4, kInternal = 1 };

std::optional<std::uint64_t> seed_from_env() {
  const char* env = std::getenv("TROTTERION_SEED");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw ConfigError("TROTTERION_SEED must be a non-negative integer");
  return v;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfig;
  if (dynamic_cast<const CompileError*>(&e)) return kCompile;
  if (dynamic_cast<const VerificationError*>(&e)) return kVerification;
  return kInternal;
}

// Runs one scenario; returns its exit code and reports on stderr/stdout.
int run_one(const std::string& ref, const std::filesystem::path& out_dir, std::optional<std::uint64_t> seed,
            std::mutex& io) {
  try {
    const Scenario s = load_scenario(resolve_scenario(ref));
    const ScenarioResult r = run_scenario(s, seed);
    const auto files = write_outputs(s, r, out_dir);
    std::lock_guard lock(io);
    for (const auto& f : files) std::cout << f.string() << '\n';
    if (!r.verified) {
      std::cerr << s.name << ": process fidelity " << r.process_fidelity << " below " << *s.min_process_fidelity << '\n';
      return kVerification;
    }
    return kOk;
  } catch (const std::exception& e) {
    std::lock_guard lock(io);
    std::cerr << ref << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_run(const std::vector<std::string>& refs, bool all, const std::string& out, unsigned jobs) {
  std::vector<std::string> targets = refs;
  if (all) {
    for (const auto& p : bundled_scenarios()) targets.push_back(p.string());
  }
  if (targets.empty()) throw ConfigError("no scenario given");
  const auto seed = seed_from_env();
  std::mutex io;
  std::vector<int> codes(targets.size(), kOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < targets.size(); k = next++) codes[k] = run_one(targets[k], out, seed, io);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(targets.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  int worst = kOk;
  for (int c : codes) {
    if (c != kOk && (worst == kOk || c < worst)) worst = c;
  }
  return worst;
}

int cmd_compile(const std::string& ref, std::optional<std::size_t> steps) {
  const Scenario s = load_scenario(resolve_scenario(ref));
  std::cout << to_text(compile_scenario(s, steps).sequence);
  return kOk;
}

int cmd_inspect(const std::string& ref, std::optional<std::size_t> steps) {
  const Scenario s = load_scenario(resolve_scenario(ref));
  const CompiledProgram p = compile_scenario(s, steps);
  const auto st = sequence_stats(p.sequence);
  std::cout << "scenario " << s.name << '\n'
            << "spins " << p.sequence.spin_count() << '\n'
            << "steps " << p.steps() << '\n'
            << "gates " << st.gate_count << '\n';
  for (std::size_t k = 0; k < st.per_kind.size(); ++k) {
    std::cout << "  " << gate_kind_name(static_cast<GateKind>(k)) << ' ' << st.per_kind[k] << '\n';
  }
  std::cout << "wall_time_us " << format_sig9(st.wall_time_us) << '\n' << "target " << p.target_id << '\n';
  return kOk;
}

int cmd_list() {
  for (const auto& p : bundled_scenarios()) {
    std::string desc;
    try {
      desc = load_scenario(p).description;
    } catch (const std::exception& e) {
      desc = std::string("(invalid: ") + e.what() + ")";
    }
    std::cout << p.stem().string() << "  " << desc << '\n';
  }
  return kOk;
}

int cmd_bound(const std::vector<std::string>& paths, double theta, bool groups) {
  std::vector<FixtureTable> tables;
  for (const auto& p : paths) tables.push_back(load_fixture(p));
  const BoundReport r = bound_from_tables(tables, theta);
  auto pm = [](double v, double e) { return format_sig9(v) + " +- " + format_sig9(e); };
  std::cout << "F1 " << pm(r.f1, r.f1_uncertainty) << "  (" << r.f1_rows << " rows)\n"
            << "F2 " << pm(r.f2, r.f2_uncertainty) << "  (" << r.f2_rows << " rows)\n"
            << "lower " << pm(r.bound.lower, r.bound.lower_uncertainty) << '\n'
            << "upper " << pm(r.bound.upper, r.bound.upper_uncertainty) << '\n';
  if (groups) {
    std::cout << "imbalance,rows,mean_abs_parity,mean_total_population\n";
    std::vector<FixtureTable> ghz;
    for (const auto& t : tables) {
      if (t.has_parities()) ghz.push_back(t);
    }
    for (const auto& g : decoherence_group_analysis(ghz)) {
      std::cout << g.imbalance << ',' << g.rows << ',' << format_sig9(g.mean_abs_parity) << ','
                << format_sig9(g.mean_total_population) << '\n';
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital quantum simulation compiler and scenario runner"};
  app.require_subcommand(1);

  std::vector<std::string> run_refs;
  bool run_all = false;
  std::string out_dir = "out";
  unsigned jobs = 1;
  auto* run = app.add_subcommand("run", "Run scenarios and write CSV/JSON results");
  run->add_option("scenario", run_refs, "Scenario file or bundled name");
  run->add_flag("--all", run_all, "Run every bundled scenario");
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--jobs,-j", jobs, "Scenarios to run in parallel")->check(CLI::PositiveNumber);

  std::string ref;
  std::optional<std::size_t> steps;
  auto* compile = app.add_subcommand("compile", "Print the gate program");
  compile->add_option("scenario", ref, "Scenario file or bundled name")->required();
  compile->add_option("--steps", steps, "Override the step count");

  auto* inspect = app.add_subcommand("inspect", "Print gate counts and wall time");
  inspect->add_option("scenario", ref, "Scenario file or bundled name")->required();
  inspect->add_option("--steps", steps, "Override the step count");

  app.add_subcommand("list", "List bundled scenarios");

  std::vector<std::string> tables;
  double theta = kPi / 4;
  bool groups = false;
  auto* bound = app.add_subcommand("bound", "Process fidelity bounds from truth-table fixtures");
  bound->add_option("--tables", tables, "Fixture CSV files")->required()->check(CLI::ExistingFile);
  bound->add_option("--theta", theta, "Target gate angle")->capture_default_str();
  bound->add_flag("--groups", groups, "Also print the decoherence group analysis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(run_refs, run_all, out_dir, jobs);
    if (*compile) return cmd_compile(ref, steps);
    if (*inspect) return cmd_inspect(ref, steps);
    if (app.got_subcommand("list")) return cmd_list();
    if (*bound) return cmd_bound(tables, theta, groups);
  } catch (const std::exception& e) {
    std::cerr << "trotterion: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kOk;
}
