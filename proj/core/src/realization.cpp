#include "dmimo/realization.hpp"

#include <cmath>

#include "dmimo/error.hpp"

namespace dmimo {

ChannelRealization draw_realization(const Network& net, RngStream& rng, bool noise_free) {
  const int m_count = net.num_aps();
  const int t_count = net.num_ues();
  const int a = net.antennas();
  const int l_p = net.num_pilots();

  ChannelRealization real;
  real.noise_free = noise_free;
  real.g.resize(m_count);
  real.gbar.resize(m_count);
  real.ghat.resize(m_count);
  for (int m = 0; m < m_count; ++m) {
    CMatrix& g = real.g[m];
    g.resize(a, t_count);
    for (int t = 0; t < t_count; ++t) {
      const double amp = std::sqrt(net.lsfc.beta(m, t));
      for (int l = 0; l < a; ++l) g(l, t) = amp * rng.complex_normal();
    }
    CMatrix& gbar = real.gbar[m];
    gbar.resize(a, l_p);
    for (int i = 0; i < l_p; ++i) {
      for (int l = 0; l < a; ++l) gbar(l, i) = rng.complex_normal();
    }
    for (int t = 0; t < t_count; ++t) {
      gbar.col(net.plan.pilot(t)) += std::sqrt(net.power.pilot_snr(t) * l_p) * g.col(t);
    }
    CMatrix& ghat = real.ghat[m];
    ghat.resize(a, t_count);
    for (int t = 0; t < t_count; ++t) {
      ghat.col(t) = net.stats.c(m, t) * gbar.col(net.plan.pilot(t));
    }
  }
  return real;
}

std::vector<CVector> received_uplink(const ChannelRealization& real,
                                     std::span<const std::complex<double>> symbols,
                                     const PowerConfig& pw, RngStream& rng) {
  std::vector<CVector> y(real.g.size());
  for (std::size_t m = 0; m < real.g.size(); ++m) {
    const CMatrix& g = real.g[m];
    if (static_cast<Eigen::Index>(symbols.size()) != g.cols()) {
      throw Error("received_uplink: one data symbol per UE required");
    }
    CVector acc = CVector::Zero(g.rows());
    for (Eigen::Index t = 0; t < g.cols(); ++t) {
      acc += std::sqrt(pw.data_snr(t)) * symbols[static_cast<std::size_t>(t)] * g.col(t);
    }
    if (!real.noise_free) {
      for (Eigen::Index l = 0; l < acc.size(); ++l) acc(l) += rng.complex_normal();
    }
    y[m] = std::move(acc);
  }
  return y;
}

}  // namespace dmimo
