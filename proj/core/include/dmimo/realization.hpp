#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dmimo/network.hpp"
#include "dmimo/rng.hpp"

namespace dmimo {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// One coherence block. Per AP m:
///   g[m]    A x T true channels
///   gbar[m] A x L_p despread pilot observation (one column per pilot)
///   ghat[m] A x T MMSE estimates, ghat[m].col(t) = c_mt * gbar[m].col(i_t)
/// `noise_free` suppresses uplink data noise for oracle runs; the pilot
/// observation is always noisy.
struct ChannelRealization {
  std::vector<CMatrix> g;
  std::vector<CMatrix> gbar;
  std::vector<CMatrix> ghat;
  bool noise_free = false;
};

ChannelRealization draw_realization(const Network& net, RngStream& rng, bool noise_free = false);

/// y_m = sum_t sqrt(p^u_t) g_mt x_t + n_m for every AP. Noise is skipped
/// when the realization is noise free.
std::vector<CVector> received_uplink(const ChannelRealization& real,
                                     std::span<const std::complex<double>> symbols,
                                     const PowerConfig& pw, RngStream& rng);

}  // namespace dmimo
