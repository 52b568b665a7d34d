#include "dmimo/combining.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "dmimo/error.hpp"

namespace dmimo {

StrongSubspace::StrongSubspace(const CMatrix& gbar, std::vector<int> strong_pilots)
    : pilots_(std::move(strong_pilots)) {
  const auto a = gbar.rows();
  const auto l_s = static_cast<Eigen::Index>(pilots_.size());
  if (l_s > a - 1) {
    throw std::invalid_argument("local ZF needs A - 1 >= L_S (got A=" + std::to_string(a) +
                                ", L_S=" + std::to_string(l_s) + ")");
  }
  x_.resize(a, l_s);
  for (Eigen::Index j = 0; j < l_s; ++j) x_.col(j) = gbar.col(pilots_[j]);
  if (l_s == 0) {
    zf_.resize(a, 0);
    return;
  }
  const CMatrix gram = x_.adjoint() * x_;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  condition_ = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(condition_ <= kGramConditionLimit)) {
    throw SingularGramError("strong-pilot Gram matrix condition number " +
                            std::to_string(condition_));
  }
  Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw SingularGramError("Gram factorization failed");
  // zf = x * gram^{-1}; gram is Hermitian so zf^H = gram^{-1} x^H.
  zf_ = llt.solve(x_.adjoint()).adjoint();
}

int StrongSubspace::index_of(int pilot) const {
  for (std::size_t j = 0; j < pilots_.size(); ++j) {
    if (pilots_[j] == pilot) return static_cast<int>(j);
  }
  return -1;
}

CVector StrongSubspace::project(const CVector& v) const {
  if (pilots_.empty()) return v;
  return v - zf_ * (x_.adjoint() * v);
}

CVector build_mr(const CMatrix& gbar, std::span<const double> theta, int pilot) {
  const double a = static_cast<double>(gbar.rows());
  return gbar.col(pilot) / std::sqrt(a * theta[pilot]);
}

CVector build_lzf(const StrongSubspace& sub, std::span<const double> theta, int antennas,
                  int pilot) {
  const int j = sub.index_of(pilot);
  if (j < 0) throw std::invalid_argument("build_lzf: pilot is not strong");
  const double scale = std::sqrt(static_cast<double>(antennas - sub.size()) * theta[pilot]);
  return sub.zf().col(j) * scale;
}

CVector build_lzf(const CMatrix& gbar, const std::vector<int>& strong_pilots,
                  std::span<const double> theta, int pilot) {
  StrongSubspace sub(gbar, strong_pilots);
  return build_lzf(sub, theta, static_cast<int>(gbar.rows()), pilot);
}

CMatrix build_projection(const CMatrix& gbar, const std::vector<int>& strong_pilots) {
  StrongSubspace sub(gbar, strong_pilots);
  const auto a = gbar.rows();
  CMatrix b = CMatrix::Identity(a, a);
  if (sub.size() > 0) b -= sub.zf() * sub.selected().adjoint();
  return b;
}

CVector build_pmr(const CMatrix& gbar, const CMatrix& projection, int strong_count,
                  std::span<const double> theta, int pilot) {
  const double dof = static_cast<double>(gbar.rows() - strong_count);
  if (dof < 1.0) throw std::invalid_argument("build_pmr: needs A - 1 >= L_S");
  return projection * gbar.col(pilot) / std::sqrt(dof * theta[pilot]);
}

CombinerSet build_combiners(const ChannelRealization& real, const Eigen::MatrixXd& theta,
                            const GroupingMatrix& grouping, SinrForm form) {
  const int m_count = static_cast<int>(real.gbar.size());
  CombinerSet set;
  set.vectors.resize(m_count);
  set.kind.resize(m_count);
  set.strong_index.resize(m_count);
  std::vector<double> theta_row;
  for (int m = 0; m < m_count; ++m) {
    const CMatrix& gbar = real.gbar[m];
    const int a = static_cast<int>(gbar.rows());
    const int l_p = static_cast<int>(gbar.cols());
    theta_row.resize(l_p);
    for (int i = 0; i < l_p; ++i) theta_row[i] = theta(m, i);

    StrongSubspace sub(gbar, grouping.strong_pilots(m));
    const int l_s = sub.size();
    auto& vecs = set.vectors[m];
    auto& kinds = set.kind[m];
    auto& idx = set.strong_index[m];
    vecs.resize(l_p);
    kinds.resize(l_p);
    idx.assign(l_p, -1);
    for (int i = 0; i < l_p; ++i) {
      const int j = sub.index_of(i);
      idx[i] = j;
      if (j >= 0) {
        kinds[i] = CombinerKind::kLZF;
        vecs[i] = sub.zf().col(j) * std::sqrt(static_cast<double>(a - l_s) * theta_row[i]);
      } else if (form == SinrForm::kPWPFZF && l_s > 0) {
        kinds[i] = CombinerKind::kPMR;
        vecs[i] = sub.project(gbar.col(i)) / std::sqrt(static_cast<double>(a - l_s) * theta_row[i]);
      } else {
        kinds[i] = form == SinrForm::kPWPFZF ? CombinerKind::kPMR : CombinerKind::kMR;
        vecs[i] = build_mr(gbar, theta_row, i);
      }
    }
  }
  return set;
}

}  // namespace dmimo
