#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dmimo/csv.hpp"
#include "dmimo/grouping_matrix.hpp"
#include "dmimo/scenario.hpp"
#include "dmimo/sedecode.hpp"

namespace dmimo {

/// Per-UE decoding overhead per coherence block.
struct DecodingCost {
  double fronthaul = 0.0;  ///< complex scalars sent to the CPU
  double compute = 0.0;    ///< multiplications and divisions for the weights
};

/// Uplink data symbols per coherence block, (L_c - L_p) / 2. This is the
/// L_u of the fronthaul count; the SE prelog is this divided by L_c.
double data_symbols(const ScenarioConfig& cfg);

/// kOlsfd: fronthaul L_u M + (3MT + M)/2, compute ((M^2 + M)/2) T + (M^3 - M)/3 + M^2.
/// kLocal: fronthaul L_u M, compute ((M^2 + M)/2) T + M + M^2.
/// kUniform has no cost row and throws std::invalid_argument.
DecodingCost decoding_costs(int num_aps, int num_ues, double data_symbols, Architecture arch);

/// Multiplications and divisions per AP per coherence block to build the
/// combining vectors:
///   3 L_S^2 A / 2 + L_S A / 2 + (L_S^3 - L_S) / 3
///   + 2 (L_p - L_S) L_S A      (protected-weak schemes)
///   + A T                      (threshold schemes) or A L_p (generalized).
/// Only the four PFZF-family schemes have a row; others throw
/// std::invalid_argument.
double combining_costs(int antennas, int num_pilots, int strong_count, int num_ues,
                       Scheme scheme);

/// Variable swept by the cost curves.
enum class CostSweep { kNumUes, kNumAps, kAntennas, kNumPilots };

std::string_view to_string(CostSweep sweep);
std::optional<CostSweep> parse_cost_sweep(std::string_view name);

/// One row per (sweep value, series, cost kind) where the kinds are
/// decoding fronthaul, decoding compute and combining compute. Combining
/// rows use `strong_count` strong pilots, clipped to the pilot count.
CsvTable cost_table(CostSweep sweep, const std::vector<double>& values,
                    const ScenarioConfig& base, int strong_count);

}  // namespace dmimo
