#include <cctype>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "dmimo/error.hpp"
#include "dmimo/grouping.hpp"
#include "dmimo/montecarlo.hpp"
#include "dmimo/sedecode.hpp"
#include "support/oracles.hpp"

namespace dmimo {
namespace {

std::string sanitize(std::string_view s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

Network small_network(int drop) {
  ScenarioConfig cfg;
  cfg.num_aps = 4;
  cfg.antennas_per_ap = 4;
  cfg.num_ues = 5;
  cfg.num_pilots = 3;
  cfg.area_side_m = 300.0;
  return make_network(cfg, drop);
}

void expect_term_close(double mc, double se, double closed, const char* what, int ue) {
  // Five standard errors plus a small relative slack for the stderr estimate itself.
  EXPECT_LE(std::abs(mc - closed), 5.0 * se + 0.02 * std::abs(closed)) << what << " ue " << ue;
}

class McVsClosedForm : public ::testing::TestWithParam<Scheme> {};

TEST_P(McVsClosedForm, EveryTermAgrees) {
  const Scheme scheme = GetParam();
  const Network net = small_network(1);
  const SinrForm form = form_of(scheme);
  const GroupingMatrix g = make_grouping(net, scheme, PgaConfig{});
  const WeightMatrix w = olsfd_weights(net, g, form);
  McConfig mc;
  mc.num_trials = 6000;
  mc.seed = 11;
  const EmpiricalReport emp = empirical_terms(net, g, form, w, mc);
  const SinrReport closed = closed_form_report(w, net, g, form);
  ASSERT_EQ(emp.trials, 6000);
  for (int t = 0; t < net.num_ues(); ++t) {
    const auto& e = emp.estimate[t];
    const auto& s = emp.stderr_[t];
    const auto& c = closed.ue[t];
    expect_term_close(e.ds, s.ds, c.ds, "ds", t);
    expect_term_close(e.bu, s.bu, c.bu, "bu", t);
    expect_term_close(e.pc, s.pc, c.pc, "pc", t);
    expect_term_close(e.ui, s.ui, c.ui, "ui", t);
    expect_term_close(e.gn, s.gn, c.gn, "gn", t);
  }
}

INSTANTIATE_TEST_SUITE_P(Schemes, McVsClosedForm,
                         ::testing::Values(Scheme::kGPFZF, Scheme::kGPWPFZF, Scheme::kAllMR,
                                           Scheme::kAllFZF, Scheme::kThresholdPWPFZF),
                         [](const auto& info) { return sanitize(to_string(info.param)); });

TEST(Mc, ThreadCountDoesNotChangeResults) {
  const Network net = small_network(2);
  const GroupingMatrix g = make_grouping(net, Scheme::kGPFZF, PgaConfig{});
  const WeightMatrix w = local_weights(net, g, SinrForm::kPFZF);
  McConfig one;
  one.num_trials = 500;
  McConfig many = one;
  many.threads = 3;
  const auto a = empirical_terms(net, g, SinrForm::kPFZF, w, one);
  const auto b = empirical_terms(net, g, SinrForm::kPFZF, w, many);
  for (int t = 0; t < net.num_ues(); ++t) {
    EXPECT_EQ(a.estimate[t].sinr, b.estimate[t].sinr);
    EXPECT_EQ(a.estimate[t].bu, b.estimate[t].bu);
    EXPECT_EQ(a.stderr_[t].ds, b.stderr_[t].ds);
  }
}

TEST(Mc, SeedSelectsTheStream) {
  const Network net = small_network(3);
  const GroupingMatrix g = make_grouping(net, Scheme::kAllMR, PgaConfig{});
  const WeightMatrix w = uniform_weights(net);
  McConfig a;
  a.num_trials = 200;
  McConfig b = a;
  b.seed = 2;
  const auto ra = empirical_terms(net, g, SinrForm::kPFZF, w, a);
  const auto ra2 = empirical_terms(net, g, SinrForm::kPFZF, w, a);
  const auto rb = empirical_terms(net, g, SinrForm::kPFZF, w, b);
  EXPECT_EQ(ra.estimate[0].ds, ra2.estimate[0].ds);
  EXPECT_NE(ra.estimate[0].ds, rb.estimate[0].ds);
}

TEST(Mc, SpanOverloadMatchesSingleCalls) {
  const Network net = small_network(4);
  const GroupingMatrix g = make_grouping(net, Scheme::kGPWPFZF, PgaConfig{});
  const std::vector<WeightMatrix> ws{local_weights(net, g, SinrForm::kPWPFZF), uniform_weights(net)};
  McConfig mc;
  mc.num_trials = 300;
  const auto both = empirical_terms(net, g, SinrForm::kPWPFZF, ws, mc);
  const auto single = empirical_terms(net, g, SinrForm::kPWPFZF, ws[1], mc);
  for (int t = 0; t < net.num_ues(); ++t) EXPECT_EQ(both[1].estimate[t].sinr, single.estimate[t].sinr);
}

TEST(Mc, ConfigRejectsTooFewTrials) {
  McConfig mc;
  mc.num_trials = 99;
  EXPECT_THROW(mc.validate(), ConfigError);
  mc.num_trials = 100;
  EXPECT_NO_THROW(mc.validate());
}

TEST(MomentCatalog, NamesRoundTrip) {
  for (MomentCheck c : all_moment_checks()) {
    EXPECT_EQ(parse_moment_check(to_string(c)), c);
  }
  EXPECT_EQ(all_moment_checks().size(), 13u);
  EXPECT_FALSE(check_applies(MomentCheck::kLzfGainSame, 0));
  EXPECT_FALSE(check_applies(MomentCheck::kLzfNullStrong, 1));
  EXPECT_TRUE(check_applies(MomentCheck::kLzfNullStrong, 2));
  EXPECT_TRUE(check_applies(MomentCheck::kMrMeanSame, 0));
}

TEST(MomentCatalog, ProbeLayout) {
  const MomentProbe p = make_moment_probe(8, 3);
  EXPECT_EQ(p.net.num_aps(), 1);
  EXPECT_EQ(p.net.num_pilots(), 5);
  EXPECT_EQ(p.net.num_ues(), 10);
  EXPECT_EQ(p.grouping.strong_count[0], 3);
  EXPECT_EQ(p.strong_pilot, 0);
  EXPECT_FALSE(p.grouping.is_strong(0, p.weak_pilot));
  EXPECT_NE(p.weak_pilot, p.other_weak_pilot);
}

class ExactMoments : public ::testing::TestWithParam<std::tuple<MomentCheck, int>> {};

TEST_P(ExactMoments, HoldPerDraw) {
  const auto [check, ls] = GetParam();
  const MomentProbe probe = make_moment_probe(6, ls);
  McConfig mc;
  mc.num_trials = 200;
  const MomentEstimate e = empirical_moment(check, probe, mc);
  EXPECT_TRUE(e.exact);
  EXPECT_LE(e.max_deviation, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(
    Catalog, ExactMoments,
    ::testing::Values(std::tuple{MomentCheck::kLzfGainSame, 1}, std::tuple{MomentCheck::kLzfGainSame, 5},
                      std::tuple{MomentCheck::kLzfNullStrong, 2}, std::tuple{MomentCheck::kLzfNullStrong, 5},
                      std::tuple{MomentCheck::kPmrNullStrong, 1}, std::tuple{MomentCheck::kPmrNullStrong, 4}),
    [](const auto& info) {
      return sanitize(to_string(std::get<0>(info.param))) + "_LS" + std::to_string(std::get<1>(info.param));
    });

class StatisticalMoments : public ::testing::TestWithParam<std::tuple<MomentCheck, int>> {};

TEST_P(StatisticalMoments, WithinFourStandardErrors) {
  const auto [check, ls] = GetParam();
  const MomentProbe probe = make_moment_probe(6, ls);
  McConfig mc;
  mc.num_trials = 20000;
  mc.seed = 3;
  const MomentEstimate e = empirical_moment(check, probe, mc);
  EXPECT_FALSE(e.exact);
  // Some of these are deterministic per draw; allow for rounding then.
  EXPECT_LE(std::abs(e.estimate - e.target), 4.0 * e.stderr_ + 1e-12 * std::abs(e.target))
      << to_string(check) << " L_S=" << ls << " est " << e.estimate << " target " << e.target;
}

// L_S <= A - 3 keeps the inverse-Wishart estimators at finite fourth moment.
INSTANTIATE_TEST_SUITE_P(
    Catalog, StatisticalMoments,
    ::testing::Values(std::tuple{MomentCheck::kWishartInverse, 1}, std::tuple{MomentCheck::kWishartInverse, 3},
                      std::tuple{MomentCheck::kLzfSecondSame, 2}, std::tuple{MomentCheck::kLzfSecondWeak, 2},
                      std::tuple{MomentCheck::kMrMeanSame, 0}, std::tuple{MomentCheck::kMrMeanOther, 2},
                      std::tuple{MomentCheck::kMrSecondSame, 1}, std::tuple{MomentCheck::kMrSecondOther, 0},
                      std::tuple{MomentCheck::kPmrMeanSame, 2}, std::tuple{MomentCheck::kPmrSecondSame, 3},
                      std::tuple{MomentCheck::kPmrSecondWeak, 1}),
    [](const auto& info) {
      return sanitize(to_string(std::get<0>(info.param))) + "_LS" + std::to_string(std::get<1>(info.param));
    });

TEST(MomentTargets, MrClassicalValues) {
  // MR same pilot: E{v^H ghat} = sqrt(A gamma); second moment (A + 1) gamma.
  const MomentProbe p = make_moment_probe(4, 0, 1.0, 0.5, 1.0);
  McConfig mc;
  mc.num_trials = 100;
  const auto mean = empirical_moment(MomentCheck::kMrMeanSame, p, mc);
  const auto second = empirical_moment(MomentCheck::kMrSecondSame, p, mc);
  EXPECT_NEAR(mean.target * mean.target * 5.0 / 4.0, second.target, 1e-12 * second.target);
}

}  // namespace
}  // namespace dmimo
