#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "dmimo/grouping_matrix.hpp"
#include "dmimo/realization.hpp"

namespace dmimo {

/// Draws whose strong-pilot Gram matrix exceeds this condition number are
/// rejected as numerically degenerate.
inline constexpr double kGramConditionLimit = 1e12;

enum class CombinerKind { kMR, kLZF, kPMR };

/// Factorized strong-pilot selection of one AP's despread matrix:
///   x = Gbar E_S (A x L_S), zf = x (x^H x)^{-1} (A x L_S).
/// Column j of zf is the unnormalized LZF direction of the j-th strong pilot.
class StrongSubspace {
 public:
  /// Throws SingularGramError when the Gram matrix is ill-conditioned and
  /// std::invalid_argument when L_S > A - 1.
  StrongSubspace(const CMatrix& gbar, std::vector<int> strong_pilots);

  int size() const { return static_cast<int>(pilots_.size()); }
  const std::vector<int>& pilots() const { return pilots_; }
  /// Position of `pilot` in the selection, -1 if it is weak.
  int index_of(int pilot) const;
  const CMatrix& zf() const { return zf_; }
  const CMatrix& selected() const { return x_; }
  double condition_number() const { return condition_; }

  /// Applies B = I - x (x^H x)^{-1} x^H without forming it.
  CVector project(const CVector& v) const;

 private:
  std::vector<int> pilots_;
  CMatrix x_;
  CMatrix zf_;
  double condition_ = 1.0;
};

/// MR vector for pilot i: Gbar e_i / sqrt(A theta_i).
CVector build_mr(const CMatrix& gbar, std::span<const double> theta, int pilot);

/// Local ZF vector for strong pilot i, scaled so that E{||v||^2} = 1.
CVector build_lzf(const CMatrix& gbar, const std::vector<int>& strong_pilots,
                  std::span<const double> theta, int pilot);
CVector build_lzf(const StrongSubspace& sub, std::span<const double> theta, int antennas,
                  int pilot);

/// Explicit A x A projector onto the orthogonal complement of the strong
/// columns. Identity when there are no strong pilots.
CMatrix build_projection(const CMatrix& gbar, const std::vector<int>& strong_pilots);

/// Projected MR vector for weak pilot i: B Gbar e_i / sqrt((A - L_S) theta_i).
CVector build_pmr(const CMatrix& gbar, const CMatrix& projection, int strong_count,
                  std::span<const double> theta, int pilot);

/// Combining vectors for every (AP, pilot) of one realization. All UEs on
/// pilot i at AP m use vectors[m][i].
struct CombinerSet {
  std::vector<std::vector<CVector>> vectors;
  std::vector<std::vector<CombinerKind>> kind;
  /// strong_index[m][i]: column of pilot i in the strong selection, or -1.
  std::vector<std::vector<int>> strong_index;

  const CVector& for_ue(int ap, int pilot) const { return vectors[ap][pilot]; }
};

CombinerSet build_combiners(const ChannelRealization& real, const Eigen::MatrixXd& theta,
                            const GroupingMatrix& grouping, SinrForm form);

}  // namespace dmimo
