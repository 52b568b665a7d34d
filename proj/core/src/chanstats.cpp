#include "dmimo/chanstats.hpp"

#include <cmath>

namespace dmimo {

ChannelStats compute_stats(const LsfcMatrix& lsfc, const PilotPlan& plan, const PowerConfig& pw,
                           const ScenarioConfig& cfg) {
  const int m_count = lsfc.num_aps();
  const int t_count = lsfc.num_ues();
  const double l_p = cfg.num_pilots;

  ChannelStats s;
  s.theta = Eigen::MatrixXd::Ones(m_count, cfg.num_pilots);
  for (int t = 0; t < t_count; ++t) {
    s.theta.col(plan.pilot(t)) += (pw.pilot_snr(t) * l_p) * lsfc.beta.col(t);
  }
  s.gamma.resize(m_count, t_count);
  s.c.resize(m_count, t_count);
  for (int t = 0; t < t_count; ++t) {
    const double amp = std::sqrt(pw.pilot_snr(t) * l_p);
    for (int m = 0; m < m_count; ++m) {
      const double th = s.theta(m, plan.pilot(t));
      const double b = lsfc.beta(m, t);
      s.c(m, t) = amp * b / th;
      s.gamma(m, t) = pw.pilot_snr(t) * l_p * b * b / th;
    }
  }
  return s;
}

}  // namespace dmimo
