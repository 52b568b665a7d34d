#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dmimo/grouping_matrix.hpp"
#include "dmimo/network.hpp"
#include "dmimo/sedecode.hpp"

namespace dmimo {

struct McConfig {
  int num_trials = 2000;
  std::uint64_t seed = 1;
  /// Total singular-Gram redraws tolerated over the whole run.
  int rejection_budget = 100;
  bool report_ci = false;
  /// Drop the uplink data noise; the GN term is then exactly 0.
  bool noiseless = false;
  /// Worker threads; 0 uses the hardware concurrency. Results do not
  /// depend on this value.
  int threads = 1;

  void validate() const;
};

/// Sample estimates of the SINR terms of every UE for one weight set.
struct EmpiricalReport {
  std::vector<SinrTerms> estimate;
  std::vector<SinrTerms> stderr_;  ///< per-term standard errors (sinr/se unset)
  int trials = 0;
  int rejections = 0;

  double sum_se() const;
};

/// Estimates DS/BU/PC/UI/GN for every UE and every weight set from
/// `mc.num_trials` realizations. Realizations depend only on (mc.seed,
/// trial index), so separate calls with the same seed see the same
/// channels (common random numbers across schemes and weights).
std::vector<EmpiricalReport> empirical_terms(const Network& net, const GroupingMatrix& grouping,
                                             SinrForm form,
                                             std::span<const WeightMatrix> weights,
                                             const McConfig& mc);
EmpiricalReport empirical_terms(const Network& net, const GroupingMatrix& grouping,
                                SinrForm form, const WeightMatrix& weights, const McConfig& mc);

// ---------------------------------------------------------------------------
// Moment catalog

enum class MomentCheck {
  kWishartInverse,  ///< E{[(X^H X)^-1]_jj} = 1 / ((A - L_S) theta_i)
  kLzfGainSame,     ///< v_LZF^H ghat_k = sqrt((A - L_S) gamma_k), same pilot, per draw
  kLzfNullStrong,   ///< v_LZF^H ghat_k = 0, other strong pilot, per draw
  kLzfSecondSame,   ///< E|v_LZF^H ghat_k|^2 = (A - L_S) gamma_k, same pilot
  kLzfSecondWeak,   ///< E|v_LZF^H ghat_k|^2 = gamma_k, weak pilot
  kMrMeanSame,      ///< E{v_MR^H ghat_k} = sqrt(A gamma_k), same pilot
  kMrMeanOther,     ///< E{v_MR^H ghat_k} = 0, other pilot
  kMrSecondSame,    ///< E|v_MR^H ghat_k|^2 = (A + 1) gamma_k, same pilot
  kMrSecondOther,   ///< E|v_MR^H ghat_k|^2 = gamma_k, other pilot
  kPmrMeanSame,     ///< E{v_PMR^H ghat_k} = sqrt((A - L_S) gamma_k), same pilot
  kPmrNullStrong,   ///< v_PMR^H ghat_k = 0, strong pilot, per draw
  kPmrSecondSame,   ///< E|v_PMR^H ghat_k|^2 = (A - L_S + 1) gamma_k, same pilot
  kPmrSecondWeak,   ///< E|v_PMR^H ghat_k|^2 = gamma_k, other weak pilot
};

std::string_view to_string(MomentCheck check);
std::optional<MomentCheck> parse_moment_check(std::string_view name);
std::vector<MomentCheck> all_moment_checks();

/// True for checks that hold for every realization (no averaging).
bool is_exact_check(MomentCheck check);
/// Whether the check is defined for `strong_count` strong pilots (LZF checks
/// need one strong pilot, null checks between strong pilots need two).
bool check_applies(MomentCheck check, int strong_count);

/// Single-AP probe: L_p = L_S + 2 pilots with two UEs each. Pilots
/// 0..L_S-1 are strong, pilot L_S is the weak pilot under test and pilot
/// L_S + 1 is a second weak pilot.
struct MomentProbe {
  Network net;
  GroupingMatrix grouping;
  int strong_pilot = -1;  ///< pilot 0 when L_S >= 1
  int weak_pilot = 0;
  int other_weak_pilot = 0;
};

/// `beta` holds the LSFCs of the two UEs of each pilot (first, second).
MomentProbe make_moment_probe(int antennas, int strong_count, double beta_first = 1.0,
                              double beta_second = 0.5, double snr = 1.0);

struct MomentEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double target = 0.0;
  /// Exact checks: largest per-draw deviation from the target, relative to
  /// the natural scale of the product.
  double max_deviation = 0.0;
  bool exact = false;
  int trials = 0;
  int rejections = 0;
};

/// Throws std::invalid_argument when the check does not apply to the probe.
MomentEstimate empirical_moment(MomentCheck check, const MomentProbe& probe, const McConfig& mc);

}  // namespace dmimo
