#pragma once

#include <Eigen/Core>

#include "dmimo/scenario.hpp"

namespace dmimo {

/// MMSE channel-estimation statistics, linear scale.
///   gamma(m,t): per-antenna variance of the estimate of g_mt
///   c(m,t):     MMSE scaling so that ghat_mt = c_mt * Gbar_m e_{i_t}
///   theta(m,i): per-antenna power of the despread pilot-i observation
struct ChannelStats {
  Eigen::MatrixXd gamma;
  Eigen::MatrixXd c;
  Eigen::MatrixXd theta;
};

ChannelStats compute_stats(const LsfcMatrix& lsfc, const PilotPlan& plan, const PowerConfig& pw,
                           const ScenarioConfig& cfg);

}  // namespace dmimo
