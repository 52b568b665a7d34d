#include "dmimo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dmimo/config_file.hpp"
#include "dmimo/error.hpp"

namespace dmimo {

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid scenario: " + what);
  };
  require(num_aps >= 1, "num_aps must be >= 1");
  require(antennas_per_ap >= 2, "antennas_per_ap must be >= 2");
  require(num_ues >= 1, "num_ues must be >= 1");
  require(num_pilots >= 1, "num_pilots must be >= 1");
  require(num_pilots < coherence_len, "num_pilots must be < coherence_len (no data symbols left)");
  require(max_tx_power_mw > 0.0 && std::isfinite(max_tx_power_mw), "max_tx_power_mw must be > 0");
  require(area_side_m > 0.0 && std::isfinite(area_side_m), "area_side_m must be > 0");
  require(bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
  require(shadow_sigma_db >= 0.0, "shadow_sigma_db must be >= 0");
  require(ap_height_m >= 0.0, "ap_height_m must be >= 0");
}

ScenarioConfig read_scenario(KeyValueFile& file, ScenarioConfig base) {
  auto as_int = [&](const char* key, int& field) {
    if (auto v = file.get_int(key)) {
      if (*v < 0 || *v > std::numeric_limits<int>::max()) file.fail(key, "out of range");
      field = static_cast<int>(*v);
    }
  };
  auto as_double = [&](const char* key, double& field) {
    if (auto v = file.get_double(key)) field = *v;
  };
  as_int("num_aps", base.num_aps);
  as_int("antennas_per_ap", base.antennas_per_ap);
  as_int("num_ues", base.num_ues);
  as_int("num_pilots", base.num_pilots);
  as_int("coherence_len", base.coherence_len);
  as_double("bandwidth_hz", base.bandwidth_hz);
  as_double("max_tx_power_mw", base.max_tx_power_mw);
  as_double("shadow_sigma_db", base.shadow_sigma_db);
  as_double("area_side_m", base.area_side_m);
  as_double("noise_figure_db", base.noise_figure_db);
  as_double("ap_height_m", base.ap_height_m);
  if (auto v = file.get_uint("seed")) base.seed = *v;
  base.validate();
  return base;
}

PilotPlan PilotPlan::from_assignment(std::vector<int> pilot_of_ue, int num_pilots) {
  PilotPlan plan;
  plan.sharing_sets.assign(static_cast<std::size_t>(num_pilots), {});
  for (std::size_t t = 0; t < pilot_of_ue.size(); ++t) {
    const int p = pilot_of_ue[t];
    if (p < 0 || p >= num_pilots) throw ConfigError("pilot index out of range");
    plan.sharing_sets[static_cast<std::size_t>(p)].push_back(static_cast<int>(t));
  }
  plan.pilot_of_ue = std::move(pilot_of_ue);
  return plan;
}

double path_loss_db(double d3d_m) {
  return kPathLossInterceptDb - kPathLossSlopeDb * std::log10(std::max(d3d_m, kMinDistanceM));
}

double max_lsfc_db(const ScenarioConfig& cfg) { return path_loss_db(cfg.ap_height_m); }

double noise_power_dbm(const ScenarioConfig& cfg) {
  return kThermalNoiseDbmPerHz + 10.0 * std::log10(cfg.bandwidth_hz) + cfg.noise_figure_db;
}

NetworkDrop drop_network(const ScenarioConfig& cfg, RngStream& rng) {
  NetworkDrop drop;
  drop.ap_positions.resize(static_cast<std::size_t>(cfg.num_aps));
  drop.ue_positions.resize(static_cast<std::size_t>(cfg.num_ues));
  for (auto& p : drop.ap_positions) {
    p.x = rng.uniform(0.0, cfg.area_side_m);
    p.y = rng.uniform(0.0, cfg.area_side_m);
  }
  for (auto& p : drop.ue_positions) {
    p.x = rng.uniform(0.0, cfg.area_side_m);
    p.y = rng.uniform(0.0, cfg.area_side_m);
  }
  return drop;
}

LsfcMatrix compute_lsfc(const NetworkDrop& drop, const ScenarioConfig& cfg, RngStream& rng) {
  const auto m_count = static_cast<Eigen::Index>(drop.ap_positions.size());
  const auto t_count = static_cast<Eigen::Index>(drop.ue_positions.size());
  LsfcMatrix out;
  out.beta.resize(m_count, t_count);
  const double h2 = cfg.ap_height_m * cfg.ap_height_m;
  for (Eigen::Index m = 0; m < m_count; ++m) {
    const auto& ap = drop.ap_positions[static_cast<std::size_t>(m)];
    for (Eigen::Index t = 0; t < t_count; ++t) {
      const auto& ue = drop.ue_positions[static_cast<std::size_t>(t)];
      const double dx = ap.x - ue.x;
      const double dy = ap.y - ue.y;
      const double d3d = std::sqrt(dx * dx + dy * dy + h2);
      // Always draw so that the stream layout is independent of sigma.
      const double shadow = cfg.shadow_sigma_db * rng.normal();
      out.beta(m, t) = std::pow(10.0, (path_loss_db(d3d) + shadow) / 10.0);
    }
  }
  return out;
}

PilotPlan assign_pilots(const LsfcMatrix& lsfc, const ScenarioConfig& cfg) {
  const int t_count = lsfc.num_ues();
  const int l_p = cfg.num_pilots;
  std::vector<double> best_gain(static_cast<std::size_t>(t_count));
  std::vector<int> master(static_cast<std::size_t>(t_count));
  for (int t = 0; t < t_count; ++t) {
    Eigen::Index m_star = 0;
    best_gain[static_cast<std::size_t>(t)] = lsfc.beta.col(t).maxCoeff(&m_star);
    master[static_cast<std::size_t>(t)] = static_cast<int>(m_star);
  }
  std::vector<int> order(static_cast<std::size_t>(t_count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return best_gain[static_cast<std::size_t>(a)] > best_gain[static_cast<std::size_t>(b)];
  });

  std::vector<int> pilot(static_cast<std::size_t>(t_count), -1);
  for (int r = 0; r < t_count; ++r) {
    const int t = order[static_cast<std::size_t>(r)];
    if (r < l_p) {
      pilot[static_cast<std::size_t>(t)] = r;
      continue;
    }
    const int m = master[static_cast<std::size_t>(t)];
    std::vector<double> interference(static_cast<std::size_t>(l_p), 0.0);
    for (int k = 0; k < t_count; ++k) {
      const int pk = pilot[static_cast<std::size_t>(k)];
      if (pk >= 0) interference[static_cast<std::size_t>(pk)] += lsfc.beta(m, k);
    }
    int chosen = 0;
    for (int i = 1; i < l_p; ++i) {
      if (interference[static_cast<std::size_t>(i)] <
          interference[static_cast<std::size_t>(chosen)]) {
        chosen = i;
      }
    }
    pilot[static_cast<std::size_t>(t)] = chosen;
  }
  return PilotPlan::from_assignment(std::move(pilot), l_p);
}

PowerConfig compute_powers(const ScenarioConfig& cfg) {
  cfg.validate();
  const double snr = std::pow(10.0, (10.0 * std::log10(cfg.max_tx_power_mw) - noise_power_dbm(cfg)) / 10.0);
  PowerConfig pw;
  pw.pilot_snr = Eigen::VectorXd::Constant(cfg.num_ues, snr);
  pw.data_snr = Eigen::VectorXd::Constant(cfg.num_ues, snr);
  return pw;
}

}  // namespace dmimo
