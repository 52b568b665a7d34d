// dmimo: batch driver for the uplink distributed massive-MIMO simulator.
//
//   dmimo run --scenario desk.cfg --experiment sum_se_vs_ues.cfg --out out/
//   dmimo validate --scenario desk.cfg
//   dmimo costs --sweep num_ues --values 10,20,40

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmimo/config_file.hpp"
#include "dmimo/costs.hpp"
#include "dmimo/error.hpp"
#include "dmimo/experiments.hpp"
#include "dmimo/grouping.hpp"
#include "dmimo/scenario.hpp"

namespace {

using namespace dmimo;

struct Scenario {
  ScenarioConfig cfg;
  PgaConfig pga;
};

// A scenario file holds the deployment keys plus optional pga.* overrides.
Scenario load_scenario(const std::string& path) {
  KeyValueFile file = KeyValueFile::load(path);
  Scenario s;
  s.cfg = read_scenario(file);
  s.pga = read_pga(file);
  file.reject_unknown();
  s.cfg.validate();
  return s;
}

struct RunArgs {
  std::string scenario;
  std::string experiment;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::optional<int> threads;
  std::vector<std::string> grouping;
  bool dump_stats = false;
  std::optional<int> mc_trials;
  std::string mc_report;
};

int do_run(const RunArgs& args) {
  const Scenario sc = load_scenario(args.scenario);
  ScenarioConfig cfg = sc.cfg;
  if (args.seed) cfg.seed = *args.seed;

  ExperimentSpec base;
  base.pga = sc.pga;
  KeyValueFile file = KeyValueFile::load(args.experiment);
  ExperimentSpec spec = read_experiment(file, base);

  spec.out_dir = args.out;
  if (args.drops) spec.drops = *args.drops;
  if (args.threads) spec.threads = *args.threads;
  if (!args.grouping.empty()) {
    spec.schemes.clear();
    for (const auto& name : args.grouping) spec.schemes.push_back(*parse_scheme(name));
  }
  if (args.dump_stats) spec.dump_stats = true;
  if (args.mc_trials) spec.mc.num_trials = *args.mc_trials;
  if (args.mc_report == "ci") spec.mc.report_ci = true;
  spec.validate();

  const ExperimentResult result = run_experiment(spec, cfg);
  for (const auto& f : result.files) std::cout << f.string() << "\n";
  return 0;
}

int do_validate(const std::string& scenario, const ValidationOptions& opt) {
  const Scenario sc = load_scenario(scenario);
  const ValidationReport report = validate(sc.cfg, sc.pga, opt);
  std::cout << report.to_json();
  int failed = 0;
  for (const auto& c : report.checks) failed += c.passed ? 0 : 1;
  std::cerr << report.checks.size() - failed << "/" << report.checks.size()
            << " checks passed\n";
  return report.passed() ? 0 : 1;
}

int do_costs(const std::string& scenario, const std::string& sweep_name,
             const std::vector<double>& values, int strong, const std::string& out) {
  ScenarioConfig cfg;
  if (!scenario.empty()) cfg = load_scenario(scenario).cfg;
  const auto sweep = parse_cost_sweep(sweep_name);
  if (!sweep) throw ConfigError("--sweep: unknown variable '" + sweep_name + "'");
  const CsvTable table = cost_table(*sweep, values, cfg, strong);
  if (out.empty()) {
    std::cout << table.to_csv();
    return 0;
  }
  std::filesystem::create_directories(out);
  const std::filesystem::path dir(out);
  write_file_atomic(dir / "costs.csv", table.to_csv());
  write_file_atomic(dir / "costs.json", table.to_json());
  std::cout << (dir / "costs.csv").string() << "\n" << (dir / "costs.json").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink distributed massive-MIMO simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write CSV/JSON series");
  run_cmd->add_option("--scenario", run.scenario, "Scenario key-value file")->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--experiment", run.experiment, "Experiment key-value file")->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_option("--seed", run.seed, "Override the scenario seed");
  run_cmd->add_option("--drops", run.drops, "Override the number of drops")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = hardware)")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--grouping", run.grouping, "Grouping schemes, overrides the experiment")
      ->delimiter(',')
      ->check(CLI::IsMember({"gpfzf", "gpwpfzf", "pfzf", "pwpfzf", "mr", "fzf"}));
  run_cmd->add_flag("--dump-stats", run.dump_stats, "Also write gamma/theta tables");
  run_cmd->add_option("--mc-trials", run.mc_trials, "Monte Carlo trials per drop")
      ->check(CLI::Range(100, 100000000));
  run_cmd->add_option("--mc-report", run.mc_report, "Extra Monte Carlo columns")
      ->check(CLI::IsMember({"ci"}));

  std::string val_scenario;
  ValidationOptions val_opt;
  auto* val_cmd = app.add_subcommand("validate", "Check closed forms against Monte Carlo");
  val_cmd->add_option("--scenario", val_scenario, "Scenario key-value file")->required()
      ->check(CLI::ExistingFile);
  val_cmd->add_option("--moment-trials", val_opt.moment_trials)->check(CLI::Range(100, 100000000));
  val_cmd->add_option("--sinr-trials", val_opt.sinr_trials)->check(CLI::Range(100, 100000000));
  val_cmd->add_option("--seed", val_opt.seed);
  val_cmd->add_option("--threads", val_opt.threads)->check(CLI::NonNegativeNumber);

  std::string cost_scenario;
  std::string cost_sweep;
  std::vector<double> cost_values;
  int cost_strong = 2;
  std::string cost_out;
  auto* cost_cmd = app.add_subcommand("costs", "Tabulate fronthaul and computation costs");
  cost_cmd->add_option("--sweep", cost_sweep, "num_ues|num_aps|antennas|num_pilots")->required()
      ->check(CLI::IsMember({"num_ues", "num_aps", "antennas", "num_pilots"}));
  cost_cmd->add_option("--values", cost_values, "Comma-separated sweep values")->required()
      ->delimiter(',');
  cost_cmd->add_option("--strong-pilots", cost_strong, "L_S used for the combiner costs")
      ->check(CLI::NonNegativeNumber);
  cost_cmd->add_option("--scenario", cost_scenario, "Base scenario (defaults otherwise)")
      ->check(CLI::ExistingFile);
  cost_cmd->add_option("--out", cost_out, "Write costs.csv/json here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return do_run(run);
    if (*val_cmd) return do_validate(val_scenario, val_opt);
    if (*cost_cmd) return do_costs(cost_scenario, cost_sweep, cost_values, cost_strong, cost_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
