// Reference computations for the tests. Each one is written from the
// textbook definition and shares no code with the library beyond its
// input containers.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dmimo/grouping.hpp"
#include "dmimo/montecarlo.hpp"
#include "dmimo/network.hpp"

namespace dmimo {

// Readable parameter values in test listings.
inline void PrintTo(Scheme s, std::ostream* os) { *os << to_string(s); }
inline void PrintTo(SinrForm f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(MomentCheck c, std::ostream* os) { *os << to_string(c); }

}  // namespace dmimo

namespace dmimo::testing {

/// Best sum SE over every binary indicator vector with at most A - 1 ones.
inline double exhaustive_best_sum_se(const LocalSinrModel& model, std::vector<double>* argmax = nullptr) {
  const int l_p = model.num_pilots();
  double best = -1.0;
  std::vector<double> delta(static_cast<std::size_t>(l_p));
  for (int mask = 0; mask < (1 << l_p); ++mask) {
    int ones = 0;
    for (int i = 0; i < l_p; ++i) {
      delta[i] = (mask >> i) & 1;
      ones += (mask >> i) & 1;
    }
    if (ones > model.antennas() - 1) continue;
    const double v = model.sum_se(delta);
    if (v > best) {
      best = v;
      if (argmax) *argmax = delta;
    }
  }
  return best;
}

/// Cell-free MR with per-AP combiner Gbar e_i / sqrt(A theta_i) and
/// large-scale weights a:
///   E{v^H g_k}   = sqrt(A gamma_mk)   for k on the same pilot, 0 otherwise
///   Var{v^H g_k} = beta_mk
/// so SINR_t = p_t |sum a sqrt(A gamma_t)|^2 /
///   (sum_{k in P_t \ t} p_k |sum a sqrt(A gamma_k)|^2 + sum_k p_k sum a^2 beta_k + sum a^2).
inline double classical_mr_sinr(const Network& net, const Eigen::VectorXd& a, int t) {
  const int big_a = net.antennas();
  auto coherent = [&](int k) {
    double s = 0.0;
    for (int m = 0; m < net.num_aps(); ++m) s += a(m) * std::sqrt(big_a * net.stats.gamma(m, k));
    return s;
  };
  const double signal = net.power.data_snr(t) * std::pow(coherent(t), 2);
  double interference = 0.0;
  for (int k = 0; k < net.num_ues(); ++k) {
    if (k != t && net.plan.pilot(k) == net.plan.pilot(t)) {
      interference += net.power.data_snr(k) * std::pow(coherent(k), 2);
    }
    for (int m = 0; m < net.num_aps(); ++m) {
      interference += net.power.data_snr(k) * a(m) * a(m) * net.lsfc.beta(m, k);
    }
  }
  for (int m = 0; m < net.num_aps(); ++m) interference += a(m) * a(m);
  return signal / interference;
}

/// Central difference of f at x along every coordinate.
inline Eigen::VectorXd central_difference(const std::function<double(std::span<const double>)>& f,
                                          std::vector<double> x, double h) {
  Eigen::VectorXd g(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double x0 = x[i];
    x[i] = x0 + h;
    const double up = f(x);
    x[i] = x0 - h;
    const double down = f(x);
    x[i] = x0;
    g(static_cast<Eigen::Index>(i)) = (up - down) / (2.0 * h);
  }
  return g;
}

/// Small network with hand-set LSFCs: UE t sits on pilot pilot_of[t].
inline Network handmade_network(int antennas, const Eigen::MatrixXd& beta, std::vector<int> pilot_of,
                                int num_pilots, double snr = 1.0) {
  ScenarioConfig cfg;
  cfg.num_aps = static_cast<int>(beta.rows());
  cfg.num_ues = static_cast<int>(beta.cols());
  cfg.num_pilots = num_pilots;
  cfg.antennas_per_ap = antennas;
  PowerConfig pw;
  pw.pilot_snr = Eigen::VectorXd::Constant(cfg.num_ues, snr);
  pw.data_snr = Eigen::VectorXd::Constant(cfg.num_ues, snr);
  return make_network(cfg, beta, PilotPlan::from_assignment(std::move(pilot_of), num_pilots), pw);
}

inline ScenarioConfig desk_config() {
  ScenarioConfig cfg;
  cfg.num_aps = 20;
  cfg.antennas_per_ap = 8;
  cfg.num_ues = 10;
  cfg.num_pilots = 5;
  return cfg;
}

}  // namespace dmimo::testing
