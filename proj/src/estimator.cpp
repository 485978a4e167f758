// SPDX-License-Identifier: Apache-2.0

#include "mpra/estimator.hpp"

namespace mpra {

ChannelEstimate estimate_channels(const CorrelationBlock& B, const DetectionResult& det) {
  const SelectionMatrix& A = det.A_hat;
  if (A.N() == 0) return {CMatrix(B.M(), 0), A, {}};
  require(A.K() == B.K && A.L() == B.L, "detection and correlation block disagree on K or L");
  const Eigen::MatrixXd pinv = pseudo_inverse(A.as<double>());
  return {B.B * pinv.cast<Complex>(), A, std::vector<bool>(A.N(), true)};
}

ChannelEstimate prune_false(const ChannelEstimate& est, double norm_th) {
  require(norm_th >= 0.0, "prune threshold must be >= 0");
  const int n_hat = est.A_hat.N();
  std::vector<int> keep;
  for (int n = 0; n < n_hat; ++n) {
    if (est.H_hat.col(n).norm() >= norm_th) keep.push_back(n);
  }
  if (static_cast<int>(keep.size()) == n_hat) return est;

  ChannelEstimate out;
  out.H_hat.resize(est.H_hat.rows(), static_cast<Eigen::Index>(keep.size()));
  IMatrix idx(static_cast<Eigen::Index>(keep.size()), est.A_hat.L());
  out.kept.assign(n_hat, false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    out.H_hat.col(c) = est.H_hat.col(keep[i]);
    idx.row(c) = est.A_hat.indices().row(keep[i]);
    out.kept[keep[i]] = true;
  }
  out.A_hat = selection_from_indices(idx, est.A_hat.K());
  return out;
}

std::vector<MatchedError> matched_errors(const ChannelEstimate& est, const ChannelMatrix& truth_H,
                                         const SelectionMatrix& truth_A, const std::vector<bool>& solvable) {
  require(truth_H.N() == truth_A.N(), "truth channel and selection disagree on N");
  std::vector<MatchedError> out;
  for (int n = 0; n < truth_A.N(); ++n) {
    if (!solvable[n]) continue;
    for (int c = 0; c < est.A_hat.N(); ++c) {
      if (!truth_A.row_equals(n, est.A_hat, c)) continue;
      out.push_back({n, c, (est.H_hat.col(c) - truth_H.H.col(n)).squaredNorm(), truth_H.H.col(n).squaredNorm()});
      break;
    }
  }
  return out;
}

std::optional<double> nmse(const ChannelEstimate& est, const ChannelMatrix& truth_H,
                           const SelectionMatrix& truth_A) {
  const auto matches = matched_errors(est, truth_H, truth_A, solvability(truth_A).solvable_mask);
  if (matches.empty()) return std::nullopt;
  double err = 0.0;
  double pow = 0.0;
  for (const auto& m : matches) {
    err += m.squared_error;
    pow += m.power;
  }
  return err / pow;
}

}  // namespace mpra
