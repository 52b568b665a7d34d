#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmimo/csv.hpp"
#include "dmimo/grouping.hpp"
#include "dmimo/montecarlo.hpp"
#include "dmimo/scenario.hpp"
#include "dmimo/sedecode.hpp"

namespace dmimo {

class KeyValueFile;

enum class SweepVar { kNone, kNumUes, kNumPilots, kAntennas };

enum class OutputKind { kSumSe, kPerUserCdf, kStrongPilotHistogram, kCosts, kMcValidation };

std::string_view to_string(SweepVar sweep);
std::optional<SweepVar> parse_sweep(std::string_view name);
std::string_view to_string(OutputKind kind);
std::optional<OutputKind> parse_output(std::string_view name);

struct ExperimentSpec {
  SweepVar sweep = SweepVar::kNone;
  std::vector<int> sweep_values;
  std::vector<Scheme> schemes{Scheme::kGPFZF, Scheme::kThresholdPFZF, Scheme::kGPWPFZF,
                              Scheme::kThresholdPWPFZF};
  std::vector<Architecture> architectures{Architecture::kLocal};
  int drops = 100;
  std::vector<OutputKind> outputs{OutputKind::kSumSe};
  std::filesystem::path out_dir = "out";
  double threshold = 0.9;
  PgaConfig pga;
  /// Monte Carlo validation: drops per sweep value and trial settings.
  int mc_drops = 1;
  McConfig mc;
  /// Strong pilots assumed by the combining-cost rows.
  int cost_strong_pilots = 2;
  /// Worker threads over drops; 0 uses the hardware concurrency.
  int threads = 1;
  /// Also write gamma and theta of drop 0 of the first sweep point.
  bool dump_stats = false;

  /// Throws ConfigError on any invariant violation.
  void validate() const;
};

/// Reads experiment keys (sweep, sweep_values, schemes, architectures,
/// drops, outputs, out_dir, threshold, mc.*, cost.strong_pilots, threads,
/// pga.*) on top of `base` and rejects unknown keys.
ExperimentSpec read_experiment(KeyValueFile& file, ExperimentSpec base = {});

/// Scenario for one sweep point.
ScenarioConfig sweep_point(const ScenarioConfig& base, SweepVar sweep, int value);

struct ExperimentResult {
  std::vector<CsvTable> tables;
  std::vector<std::filesystem::path> files;
};

/// Computes every requested table without touching the file system.
std::vector<CsvTable> compute_experiment(const ExperimentSpec& spec, const ScenarioConfig& base);

/// Computes the tables and writes <kind>.csv plus <kind>.json into
/// spec.out_dir. On failure no file of this run is left behind.
ExperimentResult run_experiment(const ExperimentSpec& spec, const ScenarioConfig& base);

/// 10th percentile (linear interpolation between order statistics).
double percentile(std::vector<double> values, double q);

/// Figure family of the evaluation and the output kind that reproduces it.
struct CoverageEntry {
  std::string family;
  OutputKind output;
  SweepVar sweep;
};
const std::vector<CoverageEntry>& figure_coverage();

// ---------------------------------------------------------------------------
// End-to-end validation

struct ValidationCheck {
  std::string name;
  double estimate = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidationOptions {
  int moment_trials = 10000;
  int sinr_trials = 2000;
  int gradient_points = 20;
  double moment_tol = 0.03;
  double exact_tol = 1e-9;
  double sinr_tol = 0.05;
  double gradient_tol = 1e-5;
  double fd_step = 1e-6;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const;
  std::string to_json() const;
};

/// Moment catalog for every L_S in [0, A - 1] at the scenario's A.
std::vector<ValidationCheck> validate_moments(int antennas, const ValidationOptions& opt);
/// Closed-form vs Monte Carlo SINR of every UE of drop 0, for both
/// generalized schemes and all three weight choices.
std::vector<ValidationCheck> validate_sinr(const ScenarioConfig& cfg, const PgaConfig& pga,
                                           const ValidationOptions& opt);
/// Analytic vs central-difference PGA gradient at random interior points.
std::vector<ValidationCheck> validate_gradients(const ScenarioConfig& cfg,
                                                const ValidationOptions& opt);

ValidationReport validate(const ScenarioConfig& cfg, const PgaConfig& pga,
                          const ValidationOptions& opt = {});

}  // namespace dmimo
