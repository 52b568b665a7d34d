#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dmimo/rng.hpp"

namespace dmimo {

class KeyValueFile;

/// Network dimensions, powers and coherence structure. Defaults are the
/// baseline deployment: 100 APs with 8 antennas, 100 UEs, 7 pilots.
struct ScenarioConfig {
  int num_aps = 100;
  int antennas_per_ap = 8;
  int num_ues = 100;
  int num_pilots = 7;
  int coherence_len = 200;
  double bandwidth_hz = 20e6;
  double max_tx_power_mw = 100.0;
  double shadow_sigma_db = 8.0;
  double area_side_m = 1000.0;
  double noise_figure_db = 9.0;
  double ap_height_m = 10.0;
  std::uint64_t seed = 1;

  /// Throws ConfigError on any invariant violation.
  void validate() const;
};

/// Reads scenario keys from `file` on top of `base`. Does not reject
/// unknown keys; other modules (PGA settings) share the same file.
ScenarioConfig read_scenario(KeyValueFile& file, ScenarioConfig base = {});

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct NetworkDrop {
  std::vector<Point> ap_positions;
  std::vector<Point> ue_positions;
};

/// M x T large-scale fading coefficients, linear power gain.
struct LsfcMatrix {
  Eigen::MatrixXd beta;

  int num_aps() const { return static_cast<int>(beta.rows()); }
  int num_ues() const { return static_cast<int>(beta.cols()); }
};

struct PilotPlan {
  std::vector<int> pilot_of_ue;
  std::vector<std::vector<int>> sharing_sets;

  int num_pilots() const { return static_cast<int>(sharing_sets.size()); }
  int pilot(int ue) const { return pilot_of_ue[static_cast<std::size_t>(ue)]; }
  const std::vector<int>& sharers(int pilot) const {
    return sharing_sets[static_cast<std::size_t>(pilot)];
  }

  /// Builds a plan from a pilot index per UE and fills the sharing sets.
  static PilotPlan from_assignment(std::vector<int> pilot_of_ue, int num_pilots);
};

/// Normalized (divided by noise power) pilot and data transmit powers.
struct PowerConfig {
  Eigen::VectorXd pilot_snr;
  Eigen::VectorXd data_snr;
};

// Path-loss model: beta_dB = kPathLossInterceptDb - kPathLossSlopeDb*log10(d3D) + F.
inline constexpr double kPathLossInterceptDb = -30.5;
inline constexpr double kPathLossSlopeDb = 36.7;
inline constexpr double kMinDistanceM = 1.0;
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

/// Deterministic part of the LSFC (no shadowing) at 3D distance `d3d_m`.
double path_loss_db(double d3d_m);

/// Largest attainable LSFC in dB: a UE directly below the AP.
double max_lsfc_db(const ScenarioConfig& cfg);

double noise_power_dbm(const ScenarioConfig& cfg);

NetworkDrop drop_network(const ScenarioConfig& cfg, RngStream& rng);

LsfcMatrix compute_lsfc(const NetworkDrop& drop, const ScenarioConfig& cfg, RngStream& rng);

/// Scalable pilot assignment: the min(T, L_p) UEs with the largest max-LSFC
/// get orthogonal pilots; every later UE (same order) takes the pilot with
/// least interference at its master AP, lowest index on ties.
PilotPlan assign_pilots(const LsfcMatrix& lsfc, const ScenarioConfig& cfg);

PowerConfig compute_powers(const ScenarioConfig& cfg);

}  // namespace dmimo
