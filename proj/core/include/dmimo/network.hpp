#pragma once

#include <cstdint>

#include "dmimo/chanstats.hpp"
#include "dmimo/scenario.hpp"

namespace dmimo {

/// One network drop together with everything derived from it: positions,
/// LSFCs, pilot plan, powers and estimation statistics.
struct Network {
  ScenarioConfig cfg;
  NetworkDrop drop;
  LsfcMatrix lsfc;
  PilotPlan plan;
  PowerConfig power;
  ChannelStats stats;

  int num_aps() const { return cfg.num_aps; }
  int num_ues() const { return cfg.num_ues; }
  int num_pilots() const { return cfg.num_pilots; }
  int antennas() const { return cfg.antennas_per_ap; }
};

/// Draws drop number `drop_index` of `cfg`. Positions and shadowing use
/// separate streams keyed by (cfg.seed, drop_index).
Network make_network(const ScenarioConfig& cfg, std::uint64_t drop_index = 0);

/// Builds a network from explicit LSFCs and pilots (no geometry).
Network make_network(const ScenarioConfig& cfg, const Eigen::MatrixXd& beta, PilotPlan plan);

/// Same, with explicit normalized powers instead of the full-power default.
Network make_network(const ScenarioConfig& cfg, const Eigen::MatrixXd& beta, PilotPlan plan,
                     PowerConfig power);

}  // namespace dmimo
