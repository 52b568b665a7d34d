#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace dmimo {

/// How a grouping was produced.
enum class Scheme {
  kGPFZF,            ///< per-AP PGA grouping, PFZF combiners
  kGPWPFZF,          ///< per-AP PGA grouping, protected-weak combiners
  kThresholdPFZF,    ///< fixed LSFC-fraction threshold, PFZF combiners
  kThresholdPWPFZF,  ///< fixed LSFC-fraction threshold, protected-weak combiners
  kAllMR,            ///< no strong pilots anywhere
  kAllFZF,           ///< every pilot strong everywhere (needs L_p <= A-1)
};

/// Which combiner family (and hence which closed-form SINR) applies.
/// PFZF: weak pilots use plain MR. PWPFZF: weak pilots use projected MR.
enum class SinrForm { kPFZF, kPWPFZF };

SinrForm form_of(Scheme scheme);
std::string_view to_string(Scheme scheme);
std::string_view to_string(SinrForm form);
/// Accepts the CLI spellings gpfzf|gpwpfzf|pfzf|pwpfzf|mr|fzf.
std::optional<Scheme> parse_scheme(std::string_view name);

/// Per-(AP, pilot) strong/weak indicators. Entries are relaxed values in
/// [0, 1] during optimization and exactly 0 or 1 once finalized.
struct GroupingMatrix {
  Eigen::MatrixXd delta;
  std::vector<int> strong_count;
  Scheme scheme = Scheme::kAllMR;

  int num_aps() const { return static_cast<int>(delta.rows()); }
  int num_pilots() const { return static_cast<int>(delta.cols()); }
  bool is_strong(int ap, int pilot) const { return delta(ap, pilot) > 0.5; }
  /// Strong pilots at `ap` in increasing pilot order.
  std::vector<int> strong_pilots(int ap) const;

  /// Recomputes strong_count from a binary delta.
  void refresh_counts();

  /// True when delta is binary and every AP satisfies L_S <= A - 1.
  bool feasible(int antennas) const;

  static GroupingMatrix uniform(int num_aps, int num_pilots, bool strong, Scheme scheme);
};

}  // namespace dmimo
