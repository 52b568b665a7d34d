#include "dmimo/costs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dmimo/error.hpp"

namespace dmimo {

double data_symbols(const ScenarioConfig& cfg) {
  return (cfg.coherence_len - cfg.num_pilots) / 2.0;
}

DecodingCost decoding_costs(int num_aps, int num_ues, double data_symbols, Architecture arch) {
  if (num_aps < 1 || num_ues < 1) throw std::invalid_argument("decoding_costs: counts must be >= 1");
  const double m = num_aps;
  const double t = num_ues;
  const double shared = (m * m + m) / 2.0 * t + m * m;
  switch (arch) {
    case Architecture::kOlsfd:
      return {data_symbols * m + (3.0 * m * t + m) / 2.0, shared + (m * m * m - m) / 3.0};
    case Architecture::kLocal:
      return {data_symbols * m, shared + m};
    case Architecture::kUniform:
      break;
  }
  throw std::invalid_argument("decoding_costs: no cost row for uniform decoding");
}

double combining_costs(int antennas, int num_pilots, int strong_count, int num_ues,
                       Scheme scheme) {
  if (antennas < 1 || strong_count < 0 || strong_count > num_pilots) {
    throw std::invalid_argument("combining_costs: need A >= 1 and 0 <= L_S <= L_p");
  }
  const double a = antennas;
  const double l_s = strong_count;
  const double l_p = num_pilots;
  const double gram = 3.0 * l_s * l_s * a / 2.0 + l_s * a / 2.0 + (l_s * l_s * l_s - l_s) / 3.0;
  const double projection = 2.0 * (l_p - l_s) * l_s * a;
  switch (scheme) {
    case Scheme::kThresholdPFZF: return gram + a * num_ues;
    case Scheme::kGPFZF: return gram + a * l_p;
    case Scheme::kThresholdPWPFZF: return gram + projection + a * num_ues;
    case Scheme::kGPWPFZF: return gram + projection + a * l_p;
    default: break;
  }
  throw std::invalid_argument("combining_costs: no cost row for scheme " +
                              std::string(to_string(scheme)));
}

std::string_view to_string(CostSweep sweep) {
  switch (sweep) {
    case CostSweep::kNumUes: return "num_ues";
    case CostSweep::kNumAps: return "num_aps";
    case CostSweep::kAntennas: return "antennas";
    case CostSweep::kNumPilots: return "num_pilots";
  }
  return "?";
}

std::optional<CostSweep> parse_cost_sweep(std::string_view name) {
  for (CostSweep s : {CostSweep::kNumUes, CostSweep::kNumAps, CostSweep::kAntennas,
                      CostSweep::kNumPilots}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

CsvTable cost_table(CostSweep sweep, const std::vector<double>& values,
                    const ScenarioConfig& base, int strong_count) {
  if (values.empty()) throw ConfigError("cost sweep needs at least one value");
  CsvTable table("costs", {"sweep_var", "sweep_value", "series", "cost_kind", "cost"});
  const std::string var(to_string(sweep));
  for (double value : values) {
    if (!(value >= 1.0) || value != std::floor(value)) {
      throw ConfigError("cost sweep values must be positive integers, got " + cell(value));
    }
    ScenarioConfig cfg = base;
    const int v = static_cast<int>(value);
    switch (sweep) {
      case CostSweep::kNumUes: cfg.num_ues = v; break;
      case CostSweep::kNumAps: cfg.num_aps = v; break;
      case CostSweep::kAntennas: cfg.antennas_per_ap = v; break;
      case CostSweep::kNumPilots: cfg.num_pilots = v; break;
    }
    cfg.validate();
    const double lu = data_symbols(cfg);
    for (Architecture arch : {Architecture::kOlsfd, Architecture::kLocal}) {
      const DecodingCost c = decoding_costs(cfg.num_aps, cfg.num_ues, lu, arch);
      const std::string series = arch == Architecture::kOlsfd ? "olsfd" : "proposed";
      table.add_row({var, cell(value), series, "fronthaul", cell(c.fronthaul)});
      table.add_row({var, cell(value), series, "weight_compute", cell(c.compute)});
    }
    const int l_s = std::min(strong_count, cfg.num_pilots);
    for (Scheme s : {Scheme::kThresholdPFZF, Scheme::kGPFZF, Scheme::kThresholdPWPFZF,
                     Scheme::kGPWPFZF}) {
      table.add_row({var, cell(value), std::string(to_string(s)), "combiner_compute",
                     cell(combining_costs(cfg.antennas_per_ap, cfg.num_pilots, l_s, cfg.num_ues, s))});
    }
  }
  return table;
}

}  // namespace dmimo
