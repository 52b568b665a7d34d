#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "dmimo/grouping_matrix.hpp"
#include "dmimo/network.hpp"

namespace dmimo {

class KeyValueFile;

/// Settings of the penalized projected-gradient-ascent pilot grouping.
struct PgaConfig {
  double step_size = 1e-2;      ///< alpha
  double chi_init = 1.0;        ///< initial penalty parameter
  double penalty_growth = 10.0; ///< chi multiplier per outer iteration, > 1
  double lambda1 = 0.01;        ///< weight of the binarity penalty
  double lambda2 = 0.01;        ///< weight of the L_S <= A - 1 penalty
  double inner_tol = 1e-7;      ///< relative objective change ending an inner loop
  double outer_tol = 5e-3;      ///< relative change of the inner-converged objective
  int max_inner = 5000;
  int max_outer = 12;
  double delta_init = 0.5;

  void validate() const;
};

/// Reads `pga.*` keys (pga.alpha, pga.chi_init, pga.delta_growth, ...).
PgaConfig read_pga(KeyValueFile& file, PgaConfig base = {});

/// Row m of the network statistics: everything one AP knows locally.
struct LocalApStats {
  int antennas = 0;
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;
  Eigen::VectorXd data_snr;
  std::vector<int> pilot_of_ue;
  int num_pilots = 0;

  static LocalApStats from_network(const Network& net, int ap);
};

/// Relaxed local SINR S_t / I_t of every UE at one AP as a function of the
/// pilot indicators. At binary indicators it equals the closed-form local
/// SINR used as the decoding weight.
class LocalSinrModel {
 public:
  LocalSinrModel(LocalApStats stats, SinrForm form);

  int num_pilots() const { return stats_.num_pilots; }
  int num_ues() const { return static_cast<int>(stats_.pilot_of_ue.size()); }
  int antennas() const { return stats_.antennas; }
  SinrForm form() const { return form_; }

  struct Terms {
    double signal = 0.0;
    double interference = 0.0;
  };

  Terms terms(std::span<const double> delta, int ue) const;
  double sinr(std::span<const double> delta, int ue) const;
  /// sum_t log2(1 + S_t / I_t).
  double sum_se(std::span<const double> delta) const;

  double objective(std::span<const double> delta, double chi, double lambda1,
                   double lambda2) const;
  Eigen::VectorXd gradient(std::span<const double> delta, double chi, double lambda1,
                           double lambda2) const;

  /// Penalty bracket lambda1 * sum max(0, d - d^2)^2 + lambda2 * max(0, sum d - A + 1)^2.
  double penalty(std::span<const double> delta, double lambda1, double lambda2) const;

 private:
  struct Sums {
    std::vector<double> pilot_gamma;  // sum over sharers of p_k gamma_k
    double total_beta = 0.0;          // sum over all UEs of p_k beta_k
    double weighted_gamma = 0.0;      // sum_i delta_i pilot_gamma_i
    double delta_sum = 0.0;
  };
  Sums sums(std::span<const double> delta) const;
  Terms terms(std::span<const double> delta, int ue, const Sums& s) const;

  LocalApStats stats_;
  SinrForm form_;
  std::vector<double> pilot_gamma_;
  double total_beta_ = 0.0;
};

double local_sinr(std::span<const double> delta_m, int ap, int ue, const Network& net,
                  SinrForm form);
double pga_objective(std::span<const double> delta_m, int ap, const Network& net, SinrForm form,
                     double chi, double lambda1, double lambda2);
Eigen::VectorXd pga_gradient(std::span<const double> delta_m, int ap, const Network& net,
                             SinrForm form, double chi, double lambda1, double lambda2);

struct PgaResult {
  Eigen::VectorXd delta;    ///< final binary, feasible
  Eigen::VectorXd relaxed;  ///< last relaxed iterate
  std::vector<double> objective_trace;        ///< f after every inner step
  std::vector<double> violation_per_outer;    ///< constraint violation after each inner solve
  int inner_iterations = 0;
  int outer_iterations = 0;
  bool converged = false;   ///< false: iteration budget exhausted (MaxIterations)
};

PgaResult pga_optimize(const LocalSinrModel& model, const PgaConfig& cfg);
PgaResult pga_optimize(int ap, const Network& net, SinrForm form, const PgaConfig& cfg);

/// Threshold at 0.5 (exactly 0.5 rounds down), then demote strong pilots
/// with the smallest relaxed value until at most A - 1 remain.
Eigen::VectorXd round_and_repair(const Eigen::VectorXd& relaxed, int antennas);

/// Binarity plus capacity violation: sum (d - d^2) + max(0, sum d - A + 1).
double constraint_violation(std::span<const double> delta, int antennas);

/// Baseline grouping: at each AP the smallest set of strongest UEs holding
/// a fraction >= q of the total LSFC is strong; a pilot is strong if any of
/// its UEs is. L_S is clipped to A - 1 (weakest pilots dropped). The PFZF
/// form keeps at least one strong pilot.
GroupingMatrix threshold_grouping(const Network& net, double q, SinrForm form);

/// PGA grouping at every AP independently.
GroupingMatrix optimize_grouping(const Network& net, SinrForm form, const PgaConfig& cfg);

/// Dispatches on `scheme`; `q` is used by the threshold schemes.
GroupingMatrix make_grouping(const Network& net, Scheme scheme, const PgaConfig& cfg,
                             double q = 0.9);

}  // namespace dmimo
