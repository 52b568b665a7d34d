#include "dmimo/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "dmimo/config_file.hpp"
#include "dmimo/error.hpp"

namespace dmimo {

// ---------------------------------------------------------------------------
// GroupingMatrix and scheme names

SinrForm form_of(Scheme scheme) {
  switch (scheme) {
    case Scheme::kGPWPFZF:
    case Scheme::kThresholdPWPFZF:
      return SinrForm::kPWPFZF;
    default:
      return SinrForm::kPFZF;
  }
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kGPFZF: return "gpfzf";
    case Scheme::kGPWPFZF: return "gpwpfzf";
    case Scheme::kThresholdPFZF: return "pfzf";
    case Scheme::kThresholdPWPFZF: return "pwpfzf";
    case Scheme::kAllMR: return "mr";
    case Scheme::kAllFZF: return "fzf";
  }
  return "?";
}

std::string_view to_string(SinrForm form) {
  return form == SinrForm::kPFZF ? "pfzf" : "pwpfzf";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::kGPFZF, Scheme::kGPWPFZF, Scheme::kThresholdPFZF,
                   Scheme::kThresholdPWPFZF, Scheme::kAllMR, Scheme::kAllFZF}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<int> GroupingMatrix::strong_pilots(int ap) const {
  std::vector<int> out;
  for (int i = 0; i < num_pilots(); ++i) {
    if (is_strong(ap, i)) out.push_back(i);
  }
  return out;
}

void GroupingMatrix::refresh_counts() {
  strong_count.assign(num_aps(), 0);
  for (int m = 0; m < num_aps(); ++m) {
    for (int i = 0; i < num_pilots(); ++i) strong_count[m] += is_strong(m, i) ? 1 : 0;
  }
}

bool GroupingMatrix::feasible(int antennas) const {
  for (int m = 0; m < num_aps(); ++m) {
    double sum = 0.0;
    for (int i = 0; i < num_pilots(); ++i) {
      const double d = delta(m, i);
      if (d != 0.0 && d != 1.0) return false;
      sum += d;
    }
    if (sum > antennas - 1) return false;
  }
  return true;
}

GroupingMatrix GroupingMatrix::uniform(int num_aps, int num_pilots, bool strong, Scheme scheme) {
  GroupingMatrix g;
  g.delta = Eigen::MatrixXd::Constant(num_aps, num_pilots, strong ? 1.0 : 0.0);
  g.scheme = scheme;
  g.refresh_counts();
  return g;
}

// ---------------------------------------------------------------------------
// PGA configuration

void PgaConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid PGA config: ") + what);
  };
  require(step_size > 0.0, "pga.alpha must be > 0");
  require(chi_init > 0.0, "pga.chi_init must be > 0");
  require(penalty_growth > 1.0, "pga.delta_growth must be > 1");
  require(lambda1 > 0.0 && lambda2 > 0.0, "pga.lambda1/lambda2 must be > 0");
  require(inner_tol > 0.0 && outer_tol > 0.0, "pga tolerances must be > 0");
  require(max_inner >= 1 && max_outer >= 1, "pga iteration caps must be >= 1");
  require(delta_init > 0.0 && delta_init < 1.0, "pga.delta_init must lie in (0, 1)");
}

PgaConfig read_pga(KeyValueFile& file, PgaConfig base) {
  auto num = [&](const char* key, double& field) {
    if (auto v = file.get_double(key)) field = *v;
  };
  auto count = [&](const char* key, int& field) {
    if (auto v = file.get_int(key)) {
      if (*v < 1 || *v > std::numeric_limits<int>::max()) file.fail(key, "out of range");
      field = static_cast<int>(*v);
    }
  };
  num("pga.alpha", base.step_size);
  num("pga.chi_init", base.chi_init);
  num("pga.delta_growth", base.penalty_growth);
  num("pga.lambda1", base.lambda1);
  num("pga.lambda2", base.lambda2);
  num("pga.inner_tol", base.inner_tol);
  num("pga.outer_tol", base.outer_tol);
  count("pga.max_inner", base.max_inner);
  count("pga.max_outer", base.max_outer);
  num("pga.delta_init", base.delta_init);
  base.validate();
  return base;
}

// ---------------------------------------------------------------------------
// Local SINR model

LocalApStats LocalApStats::from_network(const Network& net, int ap) {
  LocalApStats s;
  s.antennas = net.antennas();
  s.beta = net.lsfc.beta.row(ap).transpose();
  s.gamma = net.stats.gamma.row(ap).transpose();
  s.data_snr = net.power.data_snr;
  s.pilot_of_ue = net.plan.pilot_of_ue;
  s.num_pilots = net.num_pilots();
  return s;
}

LocalSinrModel::LocalSinrModel(LocalApStats stats, SinrForm form)
    : stats_(std::move(stats)), form_(form) {
  pilot_gamma_.assign(stats_.num_pilots, 0.0);
  for (int t = 0; t < num_ues(); ++t) {
    pilot_gamma_[stats_.pilot_of_ue[t]] += stats_.data_snr(t) * stats_.gamma(t);
    total_beta_ += stats_.data_snr(t) * stats_.beta(t);
  }
}

LocalSinrModel::Sums LocalSinrModel::sums(std::span<const double> delta) const {
  Sums s;
  s.pilot_gamma = pilot_gamma_;
  s.total_beta = total_beta_;
  for (int i = 0; i < num_pilots(); ++i) {
    s.weighted_gamma += delta[i] * pilot_gamma_[i];
    s.delta_sum += delta[i];
  }
  return s;
}

LocalSinrModel::Terms LocalSinrModel::terms(std::span<const double> delta, int t,
                                            const Sums& s) const {
  const int i = stats_.pilot_of_ue[t];
  const double own = stats_.data_snr(t) * stats_.gamma(t);
  const double sharers = s.pilot_gamma[i] - own;
  const double a = stats_.antennas;
  Terms out;
  if (form_ == SinrForm::kPFZF) {
    const double dt = delta[i];
    const double gain = std::max(0.0, a - dt * (1.0 + s.delta_sum - dt));
    const double others = s.weighted_gamma - dt * s.pilot_gamma[i];
    out.signal = gain * own;
    out.interference =
        gain * sharers + s.total_beta - dt * s.pilot_gamma[i] - dt * others + 1.0;
  } else {
    const double gain = std::max(0.0, a - s.delta_sum);
    out.signal = gain * own;
    out.interference = gain * sharers + s.total_beta - s.weighted_gamma + 1.0;
  }
  return out;
}

LocalSinrModel::Terms LocalSinrModel::terms(std::span<const double> delta, int ue) const {
  return terms(delta, ue, sums(delta));
}

double LocalSinrModel::sinr(std::span<const double> delta, int ue) const {
  const auto tm = terms(delta, ue);
  return tm.signal / tm.interference;
}

double LocalSinrModel::sum_se(std::span<const double> delta) const {
  const Sums s = sums(delta);
  double total = 0.0;
  for (int t = 0; t < num_ues(); ++t) {
    const auto tm = terms(delta, t, s);
    total += std::log2(1.0 + tm.signal / tm.interference);
  }
  return total;
}

double LocalSinrModel::penalty(std::span<const double> delta, double lambda1,
                               double lambda2) const {
  double binarity = 0.0;
  double sum = 0.0;
  for (int i = 0; i < num_pilots(); ++i) {
    const double v = std::max(0.0, delta[i] - delta[i] * delta[i]);
    binarity += v * v;
    sum += delta[i];
  }
  const double excess = std::max(0.0, sum - stats_.antennas + 1.0);
  return lambda1 * binarity + lambda2 * excess * excess;
}

double LocalSinrModel::objective(std::span<const double> delta, double chi, double lambda1,
                                 double lambda2) const {
  return sum_se(delta) - chi * penalty(delta, lambda1, lambda2);
}

Eigen::VectorXd LocalSinrModel::gradient(std::span<const double> delta, double chi,
                                         double lambda1, double lambda2) const {
  const int l_p = num_pilots();
  const Sums s = sums(delta);
  const double a = stats_.antennas;
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(l_p);

  // d/dx log2(1 + S/I) = (I S' - S I') / (ln2 * I * (I + S)).
  for (int t = 0; t < num_ues(); ++t) {
    const int i = stats_.pilot_of_ue[t];
    const double own = stats_.data_snr(t) * stats_.gamma(t);
    const double sharers = s.pilot_gamma[i] - own;
    const Terms tm = terms(delta, t, s);
    const double scale = 1.0 / (std::numbers::ln2 * tm.interference *
                                (tm.interference + tm.signal));
    if (form_ == SinrForm::kPFZF) {
      const double dt = delta[i];
      const double rest = 1.0 + s.delta_sum - dt;
      const bool active = a - dt * rest > 0.0;
      const double others = s.weighted_gamma - dt * s.pilot_gamma[i];
      for (int j = 0; j < l_p; ++j) {
        double d_gain;
        double d_noncoh;
        if (j == i) {
          d_gain = -rest;
          d_noncoh = -s.pilot_gamma[i] - others;
        } else {
          d_gain = -dt;
          d_noncoh = -dt * s.pilot_gamma[j];
        }
        if (!active) d_gain = 0.0;
        const double d_s = d_gain * own;
        const double d_i = d_gain * sharers + d_noncoh;
        grad(j) += scale * (tm.interference * d_s - tm.signal * d_i);
      }
    } else {
      const bool active = a - s.delta_sum > 0.0;
      const double d_gain = active ? -1.0 : 0.0;
      for (int j = 0; j < l_p; ++j) {
        const double d_s = d_gain * own;
        const double d_i = d_gain * sharers - s.pilot_gamma[j];
        grad(j) += scale * (tm.interference * d_s - tm.signal * d_i);
      }
    }
  }

  const double excess = std::max(0.0, s.delta_sum - a + 1.0);
  for (int j = 0; j < l_p; ++j) {
    const double bin = std::max(0.0, delta[j] - delta[j] * delta[j]);
    grad(j) -= chi * (2.0 * lambda1 * bin * (1.0 - 2.0 * delta[j]) + 2.0 * lambda2 * excess);
  }
  return grad;
}

double local_sinr(std::span<const double> delta_m, int ap, int ue, const Network& net,
                  SinrForm form) {
  return LocalSinrModel(LocalApStats::from_network(net, ap), form).sinr(delta_m, ue);
}

double pga_objective(std::span<const double> delta_m, int ap, const Network& net, SinrForm form,
                     double chi, double lambda1, double lambda2) {
  return LocalSinrModel(LocalApStats::from_network(net, ap), form)
      .objective(delta_m, chi, lambda1, lambda2);
}

Eigen::VectorXd pga_gradient(std::span<const double> delta_m, int ap, const Network& net,
                             SinrForm form, double chi, double lambda1, double lambda2) {
  return LocalSinrModel(LocalApStats::from_network(net, ap), form)
      .gradient(delta_m, chi, lambda1, lambda2);
}

// ---------------------------------------------------------------------------
// PGA

double constraint_violation(std::span<const double> delta, int antennas) {
  double binarity = 0.0;
  double sum = 0.0;
  for (double d : delta) {
    binarity += std::max(0.0, d - d * d);
    sum += d;
  }
  return binarity + std::max(0.0, sum - antennas + 1.0);
}

Eigen::VectorXd round_and_repair(const Eigen::VectorXd& relaxed, int antennas) {
  const auto l_p = relaxed.size();
  Eigen::VectorXd out(l_p);
  for (Eigen::Index i = 0; i < l_p; ++i) out(i) = relaxed(i) > 0.5 ? 1.0 : 0.0;
  const int cap = antennas - 1;
  int count = static_cast<int>(out.sum());
  if (count > cap) {
    std::vector<Eigen::Index> strong;
    for (Eigen::Index i = 0; i < l_p; ++i) {
      if (out(i) == 1.0) strong.push_back(i);
    }
    std::stable_sort(strong.begin(), strong.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return relaxed(x) < relaxed(y); });
    for (std::size_t k = 0; count > cap; ++k, --count) out(strong[k]) = 0.0;
  }
  return out;
}

namespace {

bool relative_change_within(double now, double before, double tol) {
  const double denom = std::max(std::abs(before), std::numeric_limits<double>::min());
  return std::abs(now - before) <= tol * denom;
}

}  // namespace

PgaResult pga_optimize(const LocalSinrModel& model, const PgaConfig& cfg) {
  cfg.validate();
  const int l_p = model.num_pilots();
  PgaResult res;
  Eigen::VectorXd delta = Eigen::VectorXd::Constant(l_p, cfg.delta_init);
  auto view = [&]() { return std::span<const double>(delta.data(), l_p); };

  double chi = cfg.chi_init;
  double s_prev = model.objective(view(), chi, cfg.lambda1, cfg.lambda2);
  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    double f_prev = model.objective(view(), chi, cfg.lambda1, cfg.lambda2);
    for (int inner = 0; inner < cfg.max_inner; ++inner) {
      const Eigen::VectorXd grad = model.gradient(view(), chi, cfg.lambda1, cfg.lambda2);
      delta = (delta + cfg.step_size * grad).cwiseMax(0.0).cwiseMin(1.0);
      ++res.inner_iterations;
      const double f = model.objective(view(), chi, cfg.lambda1, cfg.lambda2);
      res.objective_trace.push_back(f);
      const bool done = relative_change_within(f, f_prev, cfg.inner_tol);
      f_prev = f;
      if (done) break;
    }
    res.violation_per_outer.push_back(constraint_violation(view(), model.antennas()));
    ++res.outer_iterations;
    chi *= cfg.penalty_growth;
    const double s = model.objective(view(), chi, cfg.lambda1, cfg.lambda2);
    if (relative_change_within(s, s_prev, cfg.outer_tol)) {
      res.converged = true;
      break;
    }
    s_prev = s;
  }
  res.relaxed = delta;
  res.delta = round_and_repair(delta, model.antennas());
  return res;
}

PgaResult pga_optimize(int ap, const Network& net, SinrForm form, const PgaConfig& cfg) {
  return pga_optimize(LocalSinrModel(LocalApStats::from_network(net, ap), form), cfg);
}

// ---------------------------------------------------------------------------
// Network-wide groupings

GroupingMatrix threshold_grouping(const Network& net, double q, SinrForm form) {
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("threshold quantile must lie in (0, 1)");
  const int m_count = net.num_aps();
  const int t_count = net.num_ues();
  const int l_p = net.num_pilots();
  const int cap = net.antennas() - 1;

  GroupingMatrix g;
  g.delta = Eigen::MatrixXd::Zero(m_count, l_p);
  g.scheme = form == SinrForm::kPFZF ? Scheme::kThresholdPFZF : Scheme::kThresholdPWPFZF;

  std::vector<int> order(t_count);
  for (int m = 0; m < m_count; ++m) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return net.lsfc.beta(m, x) > net.lsfc.beta(m, y);
    });
    const double total = net.lsfc.beta.row(m).sum();
    const double target = q * total * (1.0 - 1e-12);

    // Strength of a pilot = largest LSFC among its strong UEs.
    std::vector<double> strength(l_p, -1.0);
    double cum = 0.0;
    for (int r = 0; r < t_count && cum < target; ++r) {
      const int t = order[r];
      cum += net.lsfc.beta(m, t);
      const int i = net.plan.pilot(t);
      strength[i] = std::max(strength[i], net.lsfc.beta(m, t));
    }
    std::vector<int> strong;
    for (int i = 0; i < l_p; ++i) {
      if (strength[i] >= 0.0) strong.push_back(i);
    }
    std::stable_sort(strong.begin(), strong.end(),
                     [&](int x, int y) { return strength[x] > strength[y]; });
    if (static_cast<int>(strong.size()) > cap) strong.resize(cap);
    if (strong.empty() && form == SinrForm::kPFZF && cap >= 1 && t_count > 0) {
      strong.push_back(net.plan.pilot(order.front()));
    }
    for (int i : strong) g.delta(m, i) = 1.0;
  }
  g.refresh_counts();
  return g;
}

GroupingMatrix optimize_grouping(const Network& net, SinrForm form, const PgaConfig& cfg) {
  GroupingMatrix g;
  g.delta = Eigen::MatrixXd::Zero(net.num_aps(), net.num_pilots());
  g.scheme = form == SinrForm::kPFZF ? Scheme::kGPFZF : Scheme::kGPWPFZF;
  for (int m = 0; m < net.num_aps(); ++m) {
    g.delta.row(m) = pga_optimize(m, net, form, cfg).delta.transpose();
  }
  g.refresh_counts();
  return g;
}

GroupingMatrix make_grouping(const Network& net, Scheme scheme, const PgaConfig& cfg,
                             double q) {
  switch (scheme) {
    case Scheme::kGPFZF:
    case Scheme::kGPWPFZF:
      return optimize_grouping(net, form_of(scheme), cfg);
    case Scheme::kThresholdPFZF:
    case Scheme::kThresholdPWPFZF:
      return threshold_grouping(net, q, form_of(scheme));
    case Scheme::kAllMR:
      return GroupingMatrix::uniform(net.num_aps(), net.num_pilots(), false, scheme);
    case Scheme::kAllFZF:
      if (net.num_pilots() > net.antennas() - 1) {
        throw ConfigError("full-pilot ZF needs num_pilots <= antennas_per_ap - 1");
      }
      return GroupingMatrix::uniform(net.num_aps(), net.num_pilots(), true, scheme);
  }
  throw ConfigError("unknown scheme");
}

}  // namespace dmimo
