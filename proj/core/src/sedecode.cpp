#include "dmimo/sedecode.hpp"

#include <cmath>
#include <iostream>

#include <Eigen/Cholesky>

namespace dmimo {

std::string_view to_string(Architecture arch) {
  switch (arch) {
    case Architecture::kLocal: return "local";
    case Architecture::kOlsfd: return "olsfd";
    case Architecture::kUniform: return "uniform";
  }
  return "?";
}

std::optional<Architecture> parse_architecture(std::string_view name) {
  for (Architecture a : {Architecture::kLocal, Architecture::kOlsfd, Architecture::kUniform}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

double SinrReport::sum_se() const {
  double total = 0.0;
  for (const auto& t : ue) total += t.se;
  return total;
}

double prelog(const ScenarioConfig& cfg) {
  return (1.0 - static_cast<double>(cfg.num_pilots) / cfg.coherence_len) / 2.0;
}

double se_from_sinr(double sinr, const ScenarioConfig& cfg) {
  return prelog(cfg) * std::log2(1.0 + sinr);
}

double array_gain(const Network& net, const GroupingMatrix& grouping, SinrForm form, int ap,
                  int ue) {
  const double a = net.antennas();
  const double l_s = grouping.strong_count[ap];
  if (form == SinrForm::kPWPFZF) return a - l_s;
  return grouping.is_strong(ap, net.plan.pilot(ue)) ? a - l_s : a;
}

double noncoherent_power(const Network& net, const GroupingMatrix& grouping, SinrForm form,
                         int ap, int ue) {
  const bool own_strong = grouping.is_strong(ap, net.plan.pilot(ue));
  double total = 0.0;
  for (int k = 0; k < net.num_ues(); ++k) {
    const bool strong_k = grouping.is_strong(ap, net.plan.pilot(k));
    const bool nulled = form == SinrForm::kPFZF ? own_strong && strong_k : strong_k;
    const double gamma = nulled ? net.stats.gamma(ap, k) : 0.0;
    total += net.power.data_snr(k) * (net.lsfc.beta(ap, k) - gamma);
  }
  return total;
}

namespace {

// b_k[m] for every AP.
Eigen::VectorXd coherent_gain(const Network& net, const GroupingMatrix& grouping, SinrForm form,
                              int ue) {
  Eigen::VectorXd b(net.num_aps());
  for (int m = 0; m < net.num_aps(); ++m) {
    b(m) = std::sqrt(array_gain(net, grouping, form, m, ue) * net.stats.gamma(m, ue));
  }
  return b;
}

}  // namespace

WeightMatrix local_weights(const Network& net, const GroupingMatrix& grouping, SinrForm form) {
  WeightMatrix w;
  w.a.resize(net.num_aps(), net.num_ues());
  for (int t = 0; t < net.num_ues(); ++t) {
    const auto& sharers = net.plan.sharers(net.plan.pilot(t));
    for (int m = 0; m < net.num_aps(); ++m) {
      const double gain = array_gain(net, grouping, form, m, t);
      double coherent = 0.0;
      for (int k : sharers) {
        if (k != t) coherent += net.power.data_snr(k) * gain * net.stats.gamma(m, k);
      }
      const double denom = coherent + noncoherent_power(net, grouping, form, m, t) + 1.0;
      w.a(m, t) = net.power.data_snr(t) * gain * net.stats.gamma(m, t) / denom;
    }
  }
  return w;
}

WeightMatrix uniform_weights(const Network& net) {
  return {Eigen::MatrixXd::Ones(net.num_aps(), net.num_ues())};
}

Eigen::VectorXd olsfd_weights(const Network& net, const GroupingMatrix& grouping, SinrForm form,
                              int ue) {
  const int m_count = net.num_aps();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m_count, m_count);
  for (int k : net.plan.sharers(net.plan.pilot(ue))) {
    if (k == ue) continue;
    const Eigen::VectorXd bk = coherent_gain(net, grouping, form, k);
    c.noalias() += net.power.data_snr(k) * bk * bk.transpose();
  }
  for (int m = 0; m < m_count; ++m) {
    c(m, m) += noncoherent_power(net, grouping, form, m, ue) + 1.0;
  }
  const Eigen::VectorXd b = coherent_gain(net, grouping, form, ue);
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success) {
    std::cerr << "warning: o-LSFD matrix of UE " << ue
              << " is not positive definite; applying diagonal loading\n";
    c.diagonal().array() += 1e-12 * c.diagonal().cwiseAbs().maxCoeff();
    llt.compute(c);
  }
  return llt.solve(b);
}

WeightMatrix olsfd_weights(const Network& net, const GroupingMatrix& grouping, SinrForm form) {
  WeightMatrix w;
  w.a.resize(net.num_aps(), net.num_ues());
  for (int t = 0; t < net.num_ues(); ++t) w.a.col(t) = olsfd_weights(net, grouping, form, t);
  return w;
}

WeightMatrix make_weights(const Network& net, const GroupingMatrix& grouping, SinrForm form,
                          Architecture arch) {
  switch (arch) {
    case Architecture::kLocal: return local_weights(net, grouping, form);
    case Architecture::kOlsfd: return olsfd_weights(net, grouping, form);
    case Architecture::kUniform: return uniform_weights(net);
  }
  return uniform_weights(net);
}

SinrTerms closed_form_sinr(const Eigen::VectorXd& a, const Network& net,
                           const GroupingMatrix& grouping, SinrForm form, int ue) {
  const int pilot = net.plan.pilot(ue);
  const auto& p = net.power.data_snr;
  SinrTerms out;

  const double mean_own = a.dot(coherent_gain(net, grouping, form, ue));
  out.ds = p(ue) * mean_own * mean_own;
  out.gn = a.squaredNorm();

  for (int m = 0; m < net.num_aps(); ++m) {
    const bool own_strong = grouping.is_strong(m, pilot);
    const double a2 = a(m) * a(m);
    for (int k = 0; k < net.num_ues(); ++k) {
      const bool strong_k = grouping.is_strong(m, net.plan.pilot(k));
      const bool nulled = form == SinrForm::kPFZF ? own_strong && strong_k : strong_k;
      const double spread =
          p(k) * a2 * (net.lsfc.beta(m, k) - (nulled ? net.stats.gamma(m, k) : 0.0));
      if (k == ue) {
        out.bu += spread;
      } else if (net.plan.pilot(k) == pilot) {
        out.pc += spread;
      } else {
        out.ui += spread;
      }
    }
  }
  for (int k : net.plan.sharers(pilot)) {
    if (k == ue) continue;
    const double mean_k = a.dot(coherent_gain(net, grouping, form, k));
    out.pc += p(k) * mean_k * mean_k;
  }

  out.sinr = out.ds / out.interference();
  out.se = se_from_sinr(out.sinr, net.cfg);
  return out;
}

SinrReport closed_form_report(const WeightMatrix& weights, const Network& net,
                              const GroupingMatrix& grouping, SinrForm form) {
  SinrReport report;
  report.prelog = prelog(net.cfg);
  report.ue.reserve(net.num_ues());
  for (int t = 0; t < net.num_ues(); ++t) {
    report.ue.push_back(closed_form_sinr(weights.a.col(t), net, grouping, form, t));
  }
  return report;
}

}  // namespace dmimo
