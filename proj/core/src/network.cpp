#include "dmimo/network.hpp"

#include <utility>

#include "dmimo/error.hpp"

namespace dmimo {

Network make_network(const ScenarioConfig& cfg, std::uint64_t drop_index) {
  cfg.validate();
  Network net;
  net.cfg = cfg;
  auto pos_rng = RngStream::derive(cfg.seed, StreamPurpose::kPositions, drop_index);
  auto shadow_rng = RngStream::derive(cfg.seed, StreamPurpose::kShadowing, drop_index);
  net.drop = drop_network(cfg, pos_rng);
  net.lsfc = compute_lsfc(net.drop, cfg, shadow_rng);
  net.plan = assign_pilots(net.lsfc, cfg);
  net.power = compute_powers(cfg);
  net.stats = compute_stats(net.lsfc, net.plan, net.power, cfg);
  return net;
}

Network make_network(const ScenarioConfig& cfg, const Eigen::MatrixXd& beta, PilotPlan plan) {
  return make_network(cfg, beta, std::move(plan), compute_powers(cfg));
}

Network make_network(const ScenarioConfig& cfg, const Eigen::MatrixXd& beta, PilotPlan plan,
                     PowerConfig power) {
  cfg.validate();
  if (beta.rows() != cfg.num_aps || beta.cols() != cfg.num_ues) {
    throw ConfigError("LSFC matrix shape does not match scenario dimensions");
  }
  if (static_cast<int>(plan.pilot_of_ue.size()) != cfg.num_ues ||
      plan.num_pilots() != cfg.num_pilots) {
    throw ConfigError("pilot plan does not match scenario dimensions");
  }
  Network net;
  net.cfg = cfg;
  net.lsfc.beta = beta;
  net.plan = std::move(plan);
  if (power.pilot_snr.size() != cfg.num_ues || power.data_snr.size() != cfg.num_ues ||
      (power.pilot_snr.array() <= 0.0).any() || (power.data_snr.array() <= 0.0).any()) {
    throw ConfigError("power vectors must hold one positive entry per UE");
  }
  net.power = std::move(power);
  net.stats = compute_stats(net.lsfc, net.plan, net.power, cfg);
  return net;
}

}  // namespace dmimo
