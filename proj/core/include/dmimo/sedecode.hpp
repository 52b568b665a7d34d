#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dmimo/grouping_matrix.hpp"
#include "dmimo/network.hpp"

namespace dmimo {

/// How the CPU fuses the per-AP soft estimates.
enum class Architecture {
  kLocal,    ///< each AP pre-weights by its local SINR, the CPU only sums
  kOlsfd,    ///< SINR-optimal large-scale fading decoding at the CPU
  kUniform,  ///< plain sum, a_mt = 1
};

std::string_view to_string(Architecture arch);
std::optional<Architecture> parse_architecture(std::string_view name);

/// M x T real decoding weights a_mt.
struct WeightMatrix {
  Eigen::MatrixXd a;
};

/// Closed-form or empirical SINR of one UE, split into its terms.
/// PC covers co-pilot UEs (coherent and noncoherent parts), UI the UEs on
/// other pilots, BU the UE's own beamforming uncertainty.
struct SinrTerms {
  double ds = 0.0;
  double bu = 0.0;
  double pc = 0.0;
  double ui = 0.0;
  double gn = 0.0;
  double sinr = 0.0;
  double se = 0.0;

  double interference() const { return bu + pc + ui + gn; }
};

struct SinrReport {
  std::vector<SinrTerms> ue;
  double prelog = 0.0;

  double sum_se() const;
};

/// (1 - L_p / L_c) / 2.
double prelog(const ScenarioConfig& cfg);
/// prelog * log2(1 + sinr).
double se_from_sinr(double sinr, const ScenarioConfig& cfg);

/// Effective array gain of UE k at AP m: b_k[m]^2 / gamma_mk, i.e.
/// A - delta_{m i_k} L_S (PFZF) or A - L_S (PWPFZF).
double array_gain(const Network& net, const GroupingMatrix& grouping, SinrForm form, int ap,
                  int ue);

/// Noncoherent power seen by UE t at AP m:
/// sum_k p_k (beta_mk - d_tk gamma_mk), with d_tk = delta_{m i_t} delta_{m i_k}
/// (PFZF) or delta_{m i_k} (PWPFZF).
double noncoherent_power(const Network& net, const GroupingMatrix& grouping, SinrForm form,
                         int ap, int ue);

/// a_mt = local SINR of UE t at AP m.
WeightMatrix local_weights(const Network& net, const GroupingMatrix& grouping, SinrForm form);
WeightMatrix uniform_weights(const Network& net);
/// a_t = C_t^{-1} b_t for one UE.
Eigen::VectorXd olsfd_weights(const Network& net, const GroupingMatrix& grouping, SinrForm form,
                              int ue);
WeightMatrix olsfd_weights(const Network& net, const GroupingMatrix& grouping, SinrForm form);

WeightMatrix make_weights(const Network& net, const GroupingMatrix& grouping, SinrForm form,
                          Architecture arch);

/// Closed-form SINR of UE `ue` with weight vector `a` (length M).
SinrTerms closed_form_sinr(const Eigen::VectorXd& a, const Network& net,
                           const GroupingMatrix& grouping, SinrForm form, int ue);

SinrReport closed_form_report(const WeightMatrix& weights, const Network& net,
                              const GroupingMatrix& grouping, SinrForm form);

}  // namespace dmimo
