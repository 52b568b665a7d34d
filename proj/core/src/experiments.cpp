#include "dmimo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmimo/config_file.hpp"
#include "dmimo/costs.hpp"
#include "dmimo/error.hpp"
#include "dmimo/network.hpp"
#include "parallel.hpp"

namespace dmimo {

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(SweepVar sweep) {
  switch (sweep) {
    case SweepVar::kNone: return "none";
    case SweepVar::kNumUes: return "num_ues";
    case SweepVar::kNumPilots: return "num_pilots";
    case SweepVar::kAntennas: return "antennas";
  }
  return "?";
}

std::optional<SweepVar> parse_sweep(std::string_view name) {
  for (SweepVar s : {SweepVar::kNone, SweepVar::kNumUes, SweepVar::kNumPilots, SweepVar::kAntennas}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::kSumSe: return "sum_se";
    case OutputKind::kPerUserCdf: return "per_user_cdf";
    case OutputKind::kStrongPilotHistogram: return "strong_pilot_histogram";
    case OutputKind::kCosts: return "costs";
    case OutputKind::kMcValidation: return "mc_validation";
  }
  return "?";
}

std::optional<OutputKind> parse_output(std::string_view name) {
  for (OutputKind k : {OutputKind::kSumSe, OutputKind::kPerUserCdf,
                       OutputKind::kStrongPilotHistogram, OutputKind::kCosts,
                       OutputKind::kMcValidation}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Experiment files

void ExperimentSpec::validate() const {
  if (sweep != SweepVar::kNone && sweep_values.empty()) {
    throw ConfigError("sweep_values must be nonempty when sweep != none");
  }
  for (int v : sweep_values) {
    if (v < 1) throw ConfigError("sweep_values must be positive");
  }
  if (schemes.empty()) throw ConfigError("schemes must be nonempty");
  if (architectures.empty()) throw ConfigError("architectures must be nonempty");
  if (outputs.empty()) throw ConfigError("outputs must be nonempty");
  if (drops < 1) throw ConfigError("drops must be >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("threshold must lie in (0, 1)");
  if (mc_drops < 1) throw ConfigError("mc.drops must be >= 1");
  if (cost_strong_pilots < 0) throw ConfigError("cost.strong_pilots must be >= 0");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  pga.validate();
  mc.validate();
}

namespace {

template <typename T, typename Parse>
std::vector<T> parse_names(KeyValueFile& file, const std::string& key,
                           const std::vector<std::string>& names, Parse parse) {
  std::vector<T> out;
  for (const auto& n : names) {
    const auto v = parse(n);
    if (!v) file.fail(key, "unknown value '" + n + "'");
    if (std::find(out.begin(), out.end(), *v) != out.end()) file.fail(key, "duplicate value '" + n + "'");
    out.push_back(*v);
  }
  if (out.empty()) file.fail(key, "list is empty");
  return out;
}

int checked_int(KeyValueFile& file, const std::string& key, std::int64_t v, std::int64_t lo) {
  if (v < lo || v > 1'000'000'000) file.fail(key, "out of range");
  return static_cast<int>(v);
}

}  // namespace

ExperimentSpec read_experiment(KeyValueFile& file, ExperimentSpec base) {
  if (auto v = file.get_string("sweep")) {
    const auto s = parse_sweep(*v);
    if (!s) file.fail("sweep", "expected none|num_ues|num_pilots|antennas");
    base.sweep = *s;
  }
  if (auto v = file.get_list("sweep_values")) {
    base.sweep_values.clear();
    for (const auto& item : *v) {
      int value = 0;
      std::istringstream in(item);
      if (!(in >> value) || !in.eof() || value < 1) file.fail("sweep_values", "'" + item + "' is not a positive integer");
      base.sweep_values.push_back(value);
    }
  }
  if (auto v = file.get_list("schemes")) {
    base.schemes = parse_names<Scheme>(file, "schemes", *v, parse_scheme);
  }
  if (auto v = file.get_list("architectures")) {
    base.architectures = parse_names<Architecture>(file, "architectures", *v, parse_architecture);
  }
  if (auto v = file.get_list("outputs")) {
    base.outputs = parse_names<OutputKind>(file, "outputs", *v, parse_output);
  }
  if (auto v = file.get_int("drops")) base.drops = checked_int(file, "drops", *v, 1);
  if (auto v = file.get_string("out_dir")) base.out_dir = *v;
  if (auto v = file.get_double("threshold")) base.threshold = *v;
  if (auto v = file.get_int("mc.trials")) base.mc.num_trials = checked_int(file, "mc.trials", *v, 100);
  if (auto v = file.get_int("mc.drops")) base.mc_drops = checked_int(file, "mc.drops", *v, 1);
  if (auto v = file.get_uint("mc.seed")) base.mc.seed = *v;
  if (auto v = file.get_int("mc.rejection_budget")) {
    base.mc.rejection_budget = checked_int(file, "mc.rejection_budget", *v, 0);
  }
  if (auto v = file.get_bool("mc.report_ci")) base.mc.report_ci = *v;
  if (auto v = file.get_int("cost.strong_pilots")) {
    base.cost_strong_pilots = checked_int(file, "cost.strong_pilots", *v, 0);
  }
  if (auto v = file.get_int("threads")) base.threads = checked_int(file, "threads", *v, 0);
  if (auto v = file.get_bool("dump_stats")) base.dump_stats = *v;
  base.pga = read_pga(file, base.pga);
  file.reject_unknown();
  base.validate();
  return base;
}

ScenarioConfig sweep_point(const ScenarioConfig& base, SweepVar sweep, int value) {
  ScenarioConfig cfg = base;
  switch (sweep) {
    case SweepVar::kNone: break;
    case SweepVar::kNumUes: cfg.num_ues = value; break;
    case SweepVar::kNumPilots: cfg.num_pilots = value; break;
    case SweepVar::kAntennas: cfg.antennas_per_ap = value; break;
  }
  cfg.validate();
  return cfg;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

// ---------------------------------------------------------------------------
// Experiment

namespace {

bool wants(const ExperimentSpec& spec, OutputKind kind) {
  return std::find(spec.outputs.begin(), spec.outputs.end(), kind) != spec.outputs.end();
}

struct SweepPoint {
  std::string value;  // empty cell when there is no sweep
  ScenarioConfig cfg;
};

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec, const ScenarioConfig& base) {
  std::vector<SweepPoint> points;
  if (spec.sweep == SweepVar::kNone) {
    base.validate();
    points.push_back({"", base});
  } else {
    for (int v : spec.sweep_values) points.push_back({cell(v), sweep_point(base, spec.sweep, v)});
  }
  return points;
}

// Results of one drop: per_ue_se[s][a] and strong_count[s].
struct DropResult {
  std::vector<std::vector<std::vector<double>>> per_ue_se;
  std::vector<std::vector<int>> strong_count;
};

DropResult evaluate_drop(const ExperimentSpec& spec, const ScenarioConfig& cfg, int drop) {
  const Network net = make_network(cfg, static_cast<std::uint64_t>(drop));
  DropResult out;
  out.per_ue_se.resize(spec.schemes.size());
  out.strong_count.resize(spec.schemes.size());
  for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
    const Scheme scheme = spec.schemes[s];
    const GroupingMatrix g = make_grouping(net, scheme, spec.pga, spec.threshold);
    out.strong_count[s] = g.strong_count;
    for (Architecture arch : spec.architectures) {
      const SinrForm form = form_of(scheme);
      const SinrReport rep = closed_form_report(make_weights(net, g, form, arch), net, g, form);
      std::vector<double> se;
      se.reserve(rep.ue.size());
      for (const auto& t : rep.ue) se.push_back(t.se);
      out.per_ue_se[s].push_back(std::move(se));
    }
  }
  return out;
}

double mean_of(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double std_of(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double m = mean_of(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

constexpr double kCdfStep = 0.05;

void add_mc_rows(CsvTable& table, const ExperimentSpec& spec, const SweepPoint& point, int drop) {
  const Network net = make_network(point.cfg, static_cast<std::uint64_t>(drop));
  McConfig mc = spec.mc;
  mc.seed = splitmix64(spec.mc.seed + static_cast<std::uint64_t>(drop));
  mc.threads = spec.threads;
  const std::string var(to_string(spec.sweep));
  for (Scheme scheme : spec.schemes) {
    const SinrForm form = form_of(scheme);
    const GroupingMatrix g = make_grouping(net, scheme, spec.pga, spec.threshold);
    std::vector<WeightMatrix> weights;
    for (Architecture arch : spec.architectures) weights.push_back(make_weights(net, g, form, arch));
    const auto empirical = empirical_terms(net, g, form, weights, mc);
    for (std::size_t a = 0; a < spec.architectures.size(); ++a) {
      const SinrReport closed = closed_form_report(weights[a], net, g, form);
      for (int t = 0; t < net.num_ues(); ++t) {
        const SinrTerms& c = closed.ue[t];
        const SinrTerms& e = empirical[a].estimate[t];
        const SinrTerms& se = empirical[a].stderr_[t];
        std::vector<std::string> row{var, point.value, cell(drop), std::string(to_string(scheme)),
                                     std::string(to_string(spec.architectures[a])), cell(t),
                                     cell(c.sinr), cell(e.sinr),
                                     cell(std::abs(e.sinr - c.sinr) / c.sinr)};
        for (auto [cv, ev, sv] : {std::tuple{c.ds, e.ds, se.ds}, std::tuple{c.bu, e.bu, se.bu},
                                  std::tuple{c.pc, e.pc, se.pc}, std::tuple{c.ui, e.ui, se.ui},
                                  std::tuple{c.gn, e.gn, se.gn}}) {
          row.push_back(cell(cv));
          row.push_back(cell(ev));
          row.push_back(cell(sv));
          if (spec.mc.report_ci) {
            row.push_back(cell(ev - 1.96 * sv));
            row.push_back(cell(ev + 1.96 * sv));
          }
        }
        row.push_back(cell(mc.num_trials));
        row.push_back(cell(empirical[a].rejections));
        table.add_row(std::move(row));
      }
    }
  }
}

CsvTable mc_table(const ExperimentSpec& spec) {
  std::vector<std::string> cols{"sweep_var", "sweep_value", "drop", "scheme", "architecture",
                                "ue", "closed_sinr", "mc_sinr", "rel_error"};
  for (const char* term : {"ds", "bu", "pc", "ui", "gn"}) {
    const std::string t(term);
    cols.push_back("closed_" + t);
    cols.push_back("mc_" + t);
    cols.push_back("mc_" + t + "_stderr");
    if (spec.mc.report_ci) {
      cols.push_back("mc_" + t + "_ci_lo");
      cols.push_back("mc_" + t + "_ci_hi");
    }
  }
  cols.push_back("trials");
  cols.push_back("rejections");
  return CsvTable("mc_validation", std::move(cols));
}

}  // namespace

std::vector<CsvTable> compute_experiment(const ExperimentSpec& spec, const ScenarioConfig& base) {
  spec.validate();
  const std::vector<SweepPoint> points = sweep_points(spec, base);
  const std::string var(to_string(spec.sweep));

  CsvTable sum_se("sum_se", {"sweep_var", "sweep_value", "scheme", "architecture", "drops",
                             "mean_sum_se", "std_sum_se", "p90_likely_se", "mean_user_se"});
  CsvTable cdf("per_user_cdf",
               {"sweep_var", "sweep_value", "scheme", "architecture", "quantile", "se"});
  CsvTable hist("strong_pilot_histogram", {"sweep_var", "sweep_value", "scheme",
                                           "strong_pilots", "ap_count", "drop_count"});
  CsvTable mc = mc_table(spec);
  CsvTable gamma_dump("stats_gamma", {"ap", "ue", "pilot", "beta", "gamma", "c"});
  CsvTable theta_dump("stats_theta", {"ap", "pilot", "theta"});

  const bool need_drops = wants(spec, OutputKind::kSumSe) || wants(spec, OutputKind::kPerUserCdf) ||
                          wants(spec, OutputKind::kStrongPilotHistogram);

  for (const SweepPoint& point : points) {
    if (spec.dump_stats && &point == &points.front()) {
      const Network net = make_network(point.cfg, 0);
      for (int m = 0; m < net.num_aps(); ++m) {
        for (int t = 0; t < net.num_ues(); ++t) {
          gamma_dump.add_row({cell(m), cell(t), cell(net.plan.pilot(t)), cell(net.lsfc.beta(m, t)),
                              cell(net.stats.gamma(m, t)), cell(net.stats.c(m, t))});
        }
        for (int i = 0; i < net.num_pilots(); ++i) {
          theta_dump.add_row({cell(m), cell(i), cell(net.stats.theta(m, i))});
        }
      }
    }

    if (need_drops) {
      std::vector<DropResult> drops(spec.drops);
      detail::parallel_for(spec.drops, spec.threads,
                           [&](int d) { drops[d] = evaluate_drop(spec, point.cfg, d); });

      for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
        const std::string scheme(to_string(spec.schemes[s]));
        for (std::size_t a = 0; a < spec.architectures.size(); ++a) {
          std::vector<double> sums;
          std::vector<double> pooled;
          for (const DropResult& dr : drops) {
            const auto& se = dr.per_ue_se[s][a];
            sums.push_back(std::accumulate(se.begin(), se.end(), 0.0));
            pooled.insert(pooled.end(), se.begin(), se.end());
          }
          const std::string arch(to_string(spec.architectures[a]));
          sum_se.add_row({var, point.value, scheme, arch, cell(spec.drops), cell(mean_of(sums)),
                          cell(std_of(sums)), cell(percentile(pooled, 0.1)), cell(mean_of(pooled))});
          const int steps = static_cast<int>(std::lround(1.0 / kCdfStep));
          for (int k = 0; k <= steps; ++k) {
            const double q = k * kCdfStep;
            cdf.add_row({var, point.value, scheme, arch, cell(q), cell(percentile(pooled, q))});
          }
        }
        const int a_count = point.cfg.antennas_per_ap;
        for (int l_s = 0; l_s < a_count; ++l_s) {
          int ap_count = 0;
          int drop_count = 0;
          for (const DropResult& dr : drops) {
            const auto n = std::count(dr.strong_count[s].begin(), dr.strong_count[s].end(), l_s);
            ap_count += static_cast<int>(n);
            drop_count += n > 0 ? 1 : 0;
          }
          hist.add_row({var, point.value, scheme, cell(l_s), cell(ap_count), cell(drop_count)});
        }
      }
    }

    if (wants(spec, OutputKind::kMcValidation)) {
      for (int d = 0; d < spec.mc_drops; ++d) add_mc_rows(mc, spec, point, d);
    }
  }

  std::vector<CsvTable> tables;
  for (OutputKind kind : spec.outputs) {
    switch (kind) {
      case OutputKind::kSumSe: tables.push_back(sum_se); break;
      case OutputKind::kPerUserCdf: tables.push_back(cdf); break;
      case OutputKind::kStrongPilotHistogram: tables.push_back(hist); break;
      case OutputKind::kMcValidation: tables.push_back(mc); break;
      case OutputKind::kCosts: {
        CostSweep sweep = CostSweep::kNumUes;
        std::vector<double> values;
        switch (spec.sweep) {
          case SweepVar::kNone: values.push_back(base.num_ues); break;
          case SweepVar::kNumUes: sweep = CostSweep::kNumUes; break;
          case SweepVar::kNumPilots: sweep = CostSweep::kNumPilots; break;
          case SweepVar::kAntennas: sweep = CostSweep::kAntennas; break;
        }
        if (values.empty()) values.assign(spec.sweep_values.begin(), spec.sweep_values.end());
        tables.push_back(cost_table(sweep, values, base, spec.cost_strong_pilots));
        break;
      }
    }
  }
  if (spec.dump_stats) {
    tables.push_back(std::move(gamma_dump));
    tables.push_back(std::move(theta_dump));
  }
  return tables;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const ScenarioConfig& base) {
  ExperimentResult result;
  result.tables = compute_experiment(spec, base);

  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) throw Error("cannot create " + spec.out_dir.string() + ": " + ec.message());
  try {
    for (const CsvTable& table : result.tables) {
      const auto csv = spec.out_dir / (table.kind() + ".csv");
      write_file_atomic(csv, table.to_csv());
      result.files.push_back(csv);
      const auto json = spec.out_dir / (table.kind() + ".json");
      write_file_atomic(json, table.to_json());
      result.files.push_back(json);
    }
  } catch (...) {
    for (const auto& f : result.files) std::filesystem::remove(f, ec);
    throw;
  }
  return result;
}

const std::vector<CoverageEntry>& figure_coverage() {
  static const std::vector<CoverageEntry> kMap{
      {"decoding weight computation cost vs number of UEs", OutputKind::kCosts, SweepVar::kNumUes},
      {"fronthaul cost vs number of UEs", OutputKind::kCosts, SweepVar::kNumUes},
      {"combining vector computation cost vs number of UEs", OutputKind::kCosts, SweepVar::kNumUes},
      {"distribution of strong pilot decisions per AP", OutputKind::kStrongPilotHistogram,
       SweepVar::kNone},
      {"sum SE vs number of UEs, generalized vs threshold grouping", OutputKind::kSumSe,
       SweepVar::kNumUes},
      {"sum SE vs number of pilots, generalized vs threshold grouping", OutputKind::kSumSe,
       SweepVar::kNumPilots},
      {"sum SE vs antennas per AP, generalized vs threshold grouping", OutputKind::kSumSe,
       SweepVar::kAntennas},
      {"sum SE vs number of UEs, local weights vs o-LSFD", OutputKind::kSumSe, SweepVar::kNumUes},
      {"sum SE vs number of pilots, local weights vs o-LSFD", OutputKind::kSumSe,
       SweepVar::kNumPilots},
      {"90%-likely per-user SE, generalized vs threshold grouping", OutputKind::kPerUserCdf,
       SweepVar::kNone},
      {"90%-likely per-user SE, local weights vs o-LSFD", OutputKind::kPerUserCdf,
       SweepVar::kNone},
  };
  return kMap;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["passed"] = passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"estimate", c.estimate},
                   {"target", c.target},
                   {"tolerance", c.tolerance},
                   {"passed", c.passed}});
  }
  doc["checks"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::vector<ValidationCheck> validate_moments(int antennas, const ValidationOptions& opt) {
  std::vector<ValidationCheck> out;
  McConfig mc;
  mc.num_trials = opt.moment_trials;
  mc.seed = opt.seed;
  mc.threads = opt.threads;
  for (int l_s = 0; l_s < antennas; ++l_s) {
    const MomentProbe probe = make_moment_probe(antennas, l_s);
    for (MomentCheck check : all_moment_checks()) {
      if (!check_applies(check, l_s)) continue;
      const MomentEstimate est = empirical_moment(check, probe, mc);
      ValidationCheck c;
      c.name = std::string(to_string(check)) + " A=" + std::to_string(antennas) +
               " L_S=" + std::to_string(l_s);
      c.target = est.target;
      if (est.exact) {
        c.estimate = est.max_deviation;
        c.target = 0.0;
        c.tolerance = opt.exact_tol;
        c.passed = est.max_deviation <= opt.exact_tol;
      } else if (est.target == 0.0) {
        // Zero-mean statistic: accept within four standard errors.
        c.estimate = est.estimate;
        c.tolerance = 4.0 * est.stderr_;
        c.passed = std::abs(est.estimate) <= c.tolerance;
      } else {
        c.estimate = est.estimate;
        c.tolerance = opt.moment_tol;
        c.passed = std::abs(est.estimate - est.target) <= opt.moment_tol * std::abs(est.target);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<ValidationCheck> validate_sinr(const ScenarioConfig& cfg, const PgaConfig& pga,
                                           const ValidationOptions& opt) {
  std::vector<ValidationCheck> out;
  const Network net = make_network(cfg, 0);
  McConfig mc;
  mc.num_trials = opt.sinr_trials;
  mc.seed = opt.seed;
  mc.threads = opt.threads;
  const Architecture archs[] = {Architecture::kLocal, Architecture::kOlsfd, Architecture::kUniform};
  for (Scheme scheme : {Scheme::kGPFZF, Scheme::kGPWPFZF}) {
    const SinrForm form = form_of(scheme);
    const GroupingMatrix g = make_grouping(net, scheme, pga);
    std::vector<WeightMatrix> weights;
    for (Architecture a : archs) weights.push_back(make_weights(net, g, form, a));
    const auto empirical = empirical_terms(net, g, form, weights, mc);
    for (std::size_t a = 0; a < weights.size(); ++a) {
      for (int t = 0; t < net.num_ues(); ++t) {
        const double closed = closed_form_sinr(weights[a].a.col(t), net, g, form, t).sinr;
        const double est = empirical[a].estimate[t].sinr;
        ValidationCheck c;
        c.name = "sinr " + std::string(to_string(scheme)) + " " +
                 std::string(to_string(archs[a])) + " ue=" + std::to_string(t);
        c.estimate = est;
        c.target = closed;
        c.tolerance = opt.sinr_tol;
        c.passed = std::abs(est - closed) <= opt.sinr_tol * closed;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

std::vector<ValidationCheck> validate_gradients(const ScenarioConfig& cfg,
                                                const ValidationOptions& opt) {
  std::vector<ValidationCheck> out;
  const Network net = make_network(cfg, 0);
  auto rng = RngStream::derive(opt.seed, StreamPurpose::kSynthetic, 0);
  const int l_p = net.num_pilots();
  for (SinrForm form : {SinrForm::kPFZF, SinrForm::kPWPFZF}) {
    for (int point = 0; point < opt.gradient_points; ++point) {
      const int ap = point % net.num_aps();
      const LocalSinrModel model(LocalApStats::from_network(net, ap), form);
      std::vector<double> delta(l_p);
      for (double& d : delta) d = rng.uniform(0.05, 0.95);
      const double chi = rng.uniform(0.5, 2.0);
      const Eigen::VectorXd g = model.gradient(delta, chi, 1.0, 1.0);
      const double scale = g.cwiseAbs().maxCoeff();
      double worst = 0.0;
      for (int i = 0; i < l_p; ++i) {
        std::vector<double> up = delta;
        std::vector<double> down = delta;
        up[i] += opt.fd_step;
        down[i] -= opt.fd_step;
        const double fd = (model.objective(up, chi, 1.0, 1.0) - model.objective(down, chi, 1.0, 1.0)) /
                          (2.0 * opt.fd_step);
        const double denom = std::max(std::abs(g(i)), 1e-3 * scale);
        worst = std::max(worst, std::abs(fd - g(i)) / denom);
      }
      ValidationCheck c;
      c.name = "gradient " + std::string(to_string(form)) + " point=" + std::to_string(point);
      c.estimate = worst;
      c.target = 0.0;
      c.tolerance = opt.gradient_tol;
      c.passed = worst <= opt.gradient_tol;
      out.push_back(std::move(c));
    }
  }
  return out;
}

ValidationReport validate(const ScenarioConfig& cfg, const PgaConfig& pga,
                          const ValidationOptions& opt) {
  cfg.validate();
  ValidationReport report;
  for (auto* part : {&validate_moments}) {
    auto checks = (*part)(cfg.antennas_per_ap, opt);
    report.checks.insert(report.checks.end(), checks.begin(), checks.end());
  }
  auto sinr = validate_sinr(cfg, pga, opt);
  report.checks.insert(report.checks.end(), sinr.begin(), sinr.end());
  auto grad = validate_gradients(cfg, opt);
  report.checks.insert(report.checks.end(), grad.begin(), grad.end());
  return report;
}

}  // namespace dmimo
