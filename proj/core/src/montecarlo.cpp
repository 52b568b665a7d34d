#include "dmimo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "dmimo/combining.hpp"
#include "dmimo/error.hpp"
#include "dmimo/realization.hpp"
#include "parallel.hpp"

namespace dmimo {

using cd = std::complex<double>;

void McConfig::validate() const {
  if (num_trials < 100) throw ConfigError("mc: num_trials must be >= 100");
  if (rejection_budget < 0) throw ConfigError("mc: rejection_budget must be >= 0");
  if (threads < 0) throw ConfigError("mc: threads must be >= 0");
}

double EmpiricalReport::sum_se() const {
  double total = 0.0;
  for (const auto& t : estimate) total += t.se;
  return total;
}

namespace {

RngStream trial_stream(std::uint64_t seed, StreamPurpose purpose, int trial, int attempt) {
  const std::uint64_t base = attempt == 0 ? seed : splitmix64(seed + static_cast<std::uint64_t>(attempt));
  return RngStream::derive(base, purpose, static_cast<std::uint64_t>(trial));
}

// Calls draw(rng) until it does not throw SingularGramError; returns the
// number of rejected attempts.
template <typename Draw>
int draw_with_retries(const McConfig& mc, StreamPurpose purpose, int trial, Draw&& draw) {
  for (int attempt = 0;; ++attempt) {
    RngStream rng = trial_stream(mc.seed, purpose, trial, attempt);
    try {
      draw(rng);
      return attempt;
    } catch (const SingularGramError&) {
      if (attempt >= mc.rejection_budget) {
        throw RejectionBudgetExceeded("singular Gram redraws exceeded the budget of " +
                                      std::to_string(mc.rejection_budget));
      }
    }
  }
}

void check_rejections(int total, const McConfig& mc) {
  if (total > mc.rejection_budget) {
    throw RejectionBudgetExceeded(std::to_string(total) +
                                  " singular Gram redraws exceed the budget of " +
                                  std::to_string(mc.rejection_budget));
  }
}

// Per-trial samples of one (weight set, UE) pair.
struct TrialSample {
  cd estimate_gain;  // sum_m a_mt v^H ghat_mt
  cd true_gain;      // sum_m a_mt v^H g_mt
  double pc = 0.0;   // sum over co-pilot k of p_k |sum_m a_mt v^H g_mk|^2
  double ui = 0.0;   // same over the other pilots
  double gn = 0.0;   // |sum_m a_mt v^H n_m|^2
};

double mean_of(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double stderr_of(const std::vector<double>& x, double mean) {
  double s = 0.0;
  for (double v : x) s += (v - mean) * (v - mean);
  const double n = static_cast<double>(x.size());
  return std::sqrt(s / (n - 1.0) / n);
}

}  // namespace

std::vector<EmpiricalReport> empirical_terms(const Network& net, const GroupingMatrix& grouping,
                                             SinrForm form,
                                             std::span<const WeightMatrix> weights,
                                             const McConfig& mc) {
  mc.validate();
  const int n_trials = mc.num_trials;
  const int m_count = net.num_aps();
  const int t_count = net.num_ues();
  const int l_p = net.num_pilots();
  const int a_count = net.antennas();
  const int w_count = static_cast<int>(weights.size());
  const auto& p = net.power.data_snr;
  for (const auto& w : weights) {
    if (w.a.rows() != m_count || w.a.cols() != t_count) {
      throw std::invalid_argument("weight matrix shape does not match the network");
    }
  }

  const std::size_t slots = static_cast<std::size_t>(w_count) * t_count;
  std::vector<TrialSample> samples(static_cast<std::size_t>(n_trials) * slots);
  std::vector<int> rejected(n_trials, 0);

  detail::parallel_for(n_trials, mc.threads, [&](int trial) {
    ChannelRealization real;
    CombinerSet comb;
    std::vector<CVector> noise(m_count, CVector::Zero(a_count));
    rejected[trial] = draw_with_retries(mc, StreamPurpose::kTrial, trial, [&](RngStream& rng) {
      real = draw_realization(net, rng, mc.noiseless);
      comb = build_combiners(real, net.stats.theta, grouping, form);
      if (!mc.noiseless) {
        // Data noise follows the channel draw on the same stream.
        for (auto& n : noise) {
          for (int l = 0; l < a_count; ++l) n(l) = rng.complex_normal();
        }
      }
    });

    // proj[m](i, k) = v_mi^H g_mk, proj_noise[m](i) = v_mi^H n_m,
    // proj_hat[m](i) = v_mi^H gbar_m e_i.
    std::vector<CMatrix> proj(m_count);
    std::vector<CVector> proj_noise(m_count);
    std::vector<CVector> proj_hat(m_count);
    CMatrix v(a_count, l_p);
    for (int m = 0; m < m_count; ++m) {
      for (int i = 0; i < l_p; ++i) v.col(i) = comb.vectors[m][i];
      proj[m] = v.adjoint() * real.g[m];
      proj_noise[m] = v.adjoint() * noise[m];
      proj_hat[m] = (v.adjoint() * real.gbar[m]).diagonal();
    }

    TrialSample* out = &samples[static_cast<std::size_t>(trial) * slots];
    for (int w = 0; w < w_count; ++w) {
      const Eigen::MatrixXd& a = weights[w].a;
      for (int t = 0; t < t_count; ++t) {
        const int i = net.plan.pilot(t);
        TrialSample& s = out[static_cast<std::size_t>(w) * t_count + t];
        cd noise_gain{0.0, 0.0};
        for (int m = 0; m < m_count; ++m) {
          s.estimate_gain += a(m, t) * net.stats.c(m, t) * proj_hat[m](i);
          noise_gain += a(m, t) * proj_noise[m](i);
        }
        s.gn = std::norm(noise_gain);
        for (int k = 0; k < t_count; ++k) {
          cd z{0.0, 0.0};
          for (int m = 0; m < m_count; ++m) z += a(m, t) * proj[m](i, k);
          if (k == t) {
            s.true_gain = z;
          } else if (net.plan.pilot(k) == i) {
            s.pc += p(k) * std::norm(z);
          } else {
            s.ui += p(k) * std::norm(z);
          }
        }
      }
    }
  });

  int total_rejected = 0;
  for (int r : rejected) total_rejected += r;
  check_rejections(total_rejected, mc);

  std::vector<EmpiricalReport> reports(w_count);
  const double n = static_cast<double>(n_trials);
  std::vector<double> buf(n_trials);
  for (int w = 0; w < w_count; ++w) {
    EmpiricalReport& rep = reports[w];
    rep.trials = n_trials;
    rep.rejections = total_rejected;
    rep.estimate.resize(t_count);
    rep.stderr_.resize(t_count);
    for (int t = 0; t < t_count; ++t) {
      auto sample = [&](int trial) -> const TrialSample& {
        return samples[static_cast<std::size_t>(trial) * slots +
                       static_cast<std::size_t>(w) * t_count + t];
      };
      SinrTerms& est = rep.estimate[t];
      SinrTerms& err = rep.stderr_[t];

      cd mean_hat{0.0, 0.0};
      cd mean_true{0.0, 0.0};
      for (int r = 0; r < n_trials; ++r) {
        mean_hat += sample(r).estimate_gain;
        mean_true += sample(r).true_gain;
      }
      mean_hat /= n;
      mean_true /= n;

      double spread_hat = 0.0;
      for (int r = 0; r < n_trials; ++r) spread_hat += std::norm(sample(r).estimate_gain - mean_hat);
      est.ds = p(t) * std::norm(mean_hat);
      err.ds = p(t) * 2.0 * std::abs(mean_hat) * std::sqrt(spread_hat / (n - 1.0) / n);

      for (int r = 0; r < n_trials; ++r) buf[r] = std::norm(sample(r).true_gain - mean_true);
      const double dev = mean_of(buf);
      est.bu = p(t) * dev * n / (n - 1.0);
      err.bu = p(t) * stderr_of(buf, dev) * n / (n - 1.0);

      for (int r = 0; r < n_trials; ++r) buf[r] = sample(r).pc;
      est.pc = mean_of(buf);
      err.pc = stderr_of(buf, est.pc);
      for (int r = 0; r < n_trials; ++r) buf[r] = sample(r).ui;
      est.ui = mean_of(buf);
      err.ui = stderr_of(buf, est.ui);
      for (int r = 0; r < n_trials; ++r) buf[r] = sample(r).gn;
      est.gn = mean_of(buf);
      err.gn = stderr_of(buf, est.gn);

      est.sinr = est.ds / est.interference();
      est.se = se_from_sinr(est.sinr, net.cfg);
    }
  }
  return reports;
}

EmpiricalReport empirical_terms(const Network& net, const GroupingMatrix& grouping,
                                SinrForm form, const WeightMatrix& weights, const McConfig& mc) {
  return empirical_terms(net, grouping, form, std::span<const WeightMatrix>(&weights, 1), mc)
      .front();
}

// ---------------------------------------------------------------------------
// Moment catalog

namespace {

struct CheckInfo {
  MomentCheck check;
  std::string_view name;
  bool exact;
  int min_strong;
};

constexpr CheckInfo kChecks[] = {
    {MomentCheck::kWishartInverse, "wishart-inverse-diagonal", false, 1},
    {MomentCheck::kLzfGainSame, "lzf-gain-same-pilot", true, 1},
    {MomentCheck::kLzfNullStrong, "lzf-null-strong-pilot", true, 2},
    {MomentCheck::kLzfSecondSame, "lzf-second-moment-same-pilot", false, 1},
    {MomentCheck::kLzfSecondWeak, "lzf-second-moment-weak-pilot", false, 1},
    {MomentCheck::kMrMeanSame, "mr-mean-same-pilot", false, 0},
    {MomentCheck::kMrMeanOther, "mr-mean-other-pilot", false, 0},
    {MomentCheck::kMrSecondSame, "mr-second-moment-same-pilot", false, 0},
    {MomentCheck::kMrSecondOther, "mr-second-moment-other-pilot", false, 0},
    {MomentCheck::kPmrMeanSame, "pmr-mean-same-pilot", false, 0},
    {MomentCheck::kPmrNullStrong, "pmr-null-strong-pilot", true, 1},
    {MomentCheck::kPmrSecondSame, "pmr-second-moment-same-pilot", false, 0},
    {MomentCheck::kPmrSecondWeak, "pmr-second-moment-weak-pilot", false, 0},
};

const CheckInfo& info(MomentCheck check) {
  for (const auto& c : kChecks) {
    if (c.check == check) return c;
  }
  throw std::invalid_argument("unknown moment check");
}

}  // namespace

std::string_view to_string(MomentCheck check) { return info(check).name; }

std::optional<MomentCheck> parse_moment_check(std::string_view name) {
  for (const auto& c : kChecks) {
    if (c.name == name) return c.check;
  }
  return std::nullopt;
}

std::vector<MomentCheck> all_moment_checks() {
  std::vector<MomentCheck> out;
  for (const auto& c : kChecks) out.push_back(c.check);
  return out;
}

bool is_exact_check(MomentCheck check) { return info(check).exact; }

bool check_applies(MomentCheck check, int strong_count) {
  return strong_count >= info(check).min_strong;
}

MomentProbe make_moment_probe(int antennas, int strong_count, double beta_first,
                              double beta_second, double snr) {
  if (antennas < 2) throw std::invalid_argument("probe needs at least 2 antennas");
  if (strong_count < 0 || strong_count > antennas - 1) {
    throw std::invalid_argument("probe needs 0 <= L_S <= A - 1");
  }
  const int l_p = strong_count + 2;
  const int t_count = 2 * l_p;
  ScenarioConfig cfg;
  cfg.num_aps = 1;
  cfg.antennas_per_ap = antennas;
  cfg.num_ues = t_count;
  cfg.num_pilots = l_p;
  cfg.coherence_len = std::max(cfg.coherence_len, l_p);

  Eigen::MatrixXd beta(1, t_count);
  std::vector<int> pilots(t_count);
  for (int i = 0; i < l_p; ++i) {
    beta(0, 2 * i) = beta_first;
    beta(0, 2 * i + 1) = beta_second;
    pilots[2 * i] = i;
    pilots[2 * i + 1] = i;
  }
  PowerConfig power{Eigen::VectorXd::Constant(t_count, snr),
                    Eigen::VectorXd::Constant(t_count, snr)};

  MomentProbe probe{make_network(cfg, beta, PilotPlan::from_assignment(pilots, l_p), power),
                    GroupingMatrix::uniform(1, l_p, false, Scheme::kGPWPFZF), -1, strong_count,
                    strong_count + 1};
  for (int i = 0; i < strong_count; ++i) probe.grouping.delta(0, i) = 1.0;
  probe.grouping.refresh_counts();
  if (strong_count > 0) probe.strong_pilot = 0;
  return probe;
}

MomentEstimate empirical_moment(MomentCheck check, const MomentProbe& probe, const McConfig& mc) {
  mc.validate();
  const Network& net = probe.net;
  const int l_s = probe.grouping.strong_count.at(0);
  if (!check_applies(check, l_s)) {
    throw std::invalid_argument(std::string(to_string(check)) + " needs more strong pilots");
  }
  const double a = net.antennas();
  const auto& gamma = net.stats.gamma;
  const std::vector<int> strong = probe.grouping.strong_pilots(0);
  std::vector<double> theta(net.num_pilots());
  for (int i = 0; i < net.num_pilots(); ++i) theta[i] = net.stats.theta(0, i);

  // UE 2i + 1 is the second UE of pilot i; UE 2i the first.
  const int s = probe.strong_pilot;
  const int w = probe.weak_pilot;
  const int o = probe.other_weak_pilot;

  MomentEstimate res;
  res.exact = is_exact_check(check);
  switch (check) {
    case MomentCheck::kWishartInverse: res.target = 1.0 / ((a - l_s) * theta[s]); break;
    case MomentCheck::kLzfGainSame: res.target = std::sqrt((a - l_s) * gamma(0, 2 * s + 1)); break;
    case MomentCheck::kLzfSecondSame: res.target = (a - l_s) * gamma(0, 2 * s + 1); break;
    case MomentCheck::kLzfSecondWeak: res.target = gamma(0, 2 * w); break;
    case MomentCheck::kMrMeanSame: res.target = std::sqrt(a * gamma(0, 2 * w + 1)); break;
    case MomentCheck::kMrSecondSame: res.target = (a + 1.0) * gamma(0, 2 * w + 1); break;
    case MomentCheck::kMrSecondOther: res.target = gamma(0, 2 * o); break;
    case MomentCheck::kPmrMeanSame: res.target = std::sqrt((a - l_s) * gamma(0, 2 * w + 1)); break;
    case MomentCheck::kPmrSecondSame: res.target = (a - l_s + 1.0) * gamma(0, 2 * w + 1); break;
    case MomentCheck::kPmrSecondWeak: res.target = gamma(0, 2 * o); break;
    case MomentCheck::kLzfNullStrong:
    case MomentCheck::kMrMeanOther:
    case MomentCheck::kPmrNullStrong: res.target = 0.0; break;
  }

  const int n_trials = mc.num_trials;
  std::vector<double> value(n_trials, 0.0);
  std::vector<double> deviation(n_trials, 0.0);
  std::vector<int> rejected(n_trials, 0);

  detail::parallel_for(n_trials, mc.threads, [&](int trial) {
    rejected[trial] = draw_with_retries(mc, StreamPurpose::kMoment, trial, [&](RngStream& rng) {
      const ChannelRealization real = draw_realization(net, rng, true);
      const CMatrix& gbar = real.gbar[0];
      const CMatrix& ghat = real.ghat[0];
      auto relative_null = [](const CVector& v, const CVector& g) {
        return std::abs(v.dot(g)) / (v.norm() * g.norm());
      };
      auto lzf = [&](const StrongSubspace& sub) { return build_lzf(sub, theta, net.antennas(), s); };
      auto pmr = [&]() {
        return build_pmr(gbar, build_projection(gbar, strong), l_s, theta, w);
      };

      double v = 0.0;
      double dev = 0.0;
      switch (check) {
        case MomentCheck::kWishartInverse: {
          const StrongSubspace sub(gbar, strong);
          v = sub.zf().col(sub.index_of(s)).squaredNorm();
          break;
        }
        case MomentCheck::kLzfGainSame: {
          const cd z = lzf(StrongSubspace(gbar, strong)).dot(ghat.col(2 * s + 1));
          v = z.real();
          dev = std::abs(z - res.target) / res.target;
          break;
        }
        case MomentCheck::kLzfNullStrong: {
          const StrongSubspace sub(gbar, strong);
          const int other = strong.at(1);
          dev = relative_null(lzf(sub), ghat.col(2 * other));
          v = std::abs(lzf(sub).dot(ghat.col(2 * other)));
          break;
        }
        case MomentCheck::kLzfSecondSame:
          v = std::norm(lzf(StrongSubspace(gbar, strong)).dot(ghat.col(2 * s + 1)));
          break;
        case MomentCheck::kLzfSecondWeak:
          v = std::norm(lzf(StrongSubspace(gbar, strong)).dot(ghat.col(2 * w)));
          break;
        case MomentCheck::kMrMeanSame:
          v = build_mr(gbar, theta, w).dot(ghat.col(2 * w + 1)).real();
          break;
        case MomentCheck::kMrMeanOther:
          v = build_mr(gbar, theta, w).dot(ghat.col(2 * o)).real();
          break;
        case MomentCheck::kMrSecondSame:
          v = std::norm(build_mr(gbar, theta, w).dot(ghat.col(2 * w + 1)));
          break;
        case MomentCheck::kMrSecondOther:
          v = std::norm(build_mr(gbar, theta, w).dot(ghat.col(2 * o)));
          break;
        case MomentCheck::kPmrMeanSame:
          v = pmr().dot(ghat.col(2 * w + 1)).real();
          break;
        case MomentCheck::kPmrNullStrong: {
          const CVector vec = pmr();
          double worst = 0.0;
          for (int i : strong) {
            for (int k : {2 * i, 2 * i + 1}) worst = std::max(worst, relative_null(vec, ghat.col(k)));
          }
          dev = worst;
          v = std::abs(vec.dot(ghat.col(2 * strong.front())));
          break;
        }
        case MomentCheck::kPmrSecondSame:
          v = std::norm(pmr().dot(ghat.col(2 * w + 1)));
          break;
        case MomentCheck::kPmrSecondWeak:
          v = std::norm(pmr().dot(ghat.col(2 * o)));
          break;
      }
      value[trial] = v;
      deviation[trial] = dev;
    });
  });

  int total_rejected = 0;
  for (int r : rejected) total_rejected += r;
  check_rejections(total_rejected, mc);

  res.trials = n_trials;
  res.rejections = total_rejected;
  res.estimate = mean_of(value);
  res.stderr_ = stderr_of(value, res.estimate);
  for (double d : deviation) res.max_deviation = std::max(res.max_deviation, d);
  return res;
}

}  // namespace dmimo
