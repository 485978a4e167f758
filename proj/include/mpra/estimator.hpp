// SPDX-License-Identifier: Apache-2.0
//
// Least-squares channel estimation from the detected selection matrix.

#pragma once

#include "mpra/channel.hpp"
#include "mpra/detector.hpp"

#include <optional>
#include <vector>

namespace mpra {

/// Moore-Penrose inverse through a thin SVD. Singular values at or below
/// `rel_tol` times the largest are treated as zero.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> pseudo_inverse(
    const Eigen::MatrixBase<Derived>& A, double rel_tol = 1e-9) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (A.size() == 0) return Mat::Zero(A.cols(), A.rows());
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * static_cast<double>(s(0));
  auto inv = s;
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > cutoff ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.template cast<Scalar>().asDiagonal() * svd.matrixU().adjoint();
}

struct ChannelEstimate {
  CMatrix H_hat;               ///< column n pairs with row n of A_hat
  SelectionMatrix A_hat;
  std::vector<bool> kept;      ///< pruning decision per row of the original detection
};

/// H_hat = B pinv(A_hat). An empty detection gives an empty estimate.
ChannelEstimate estimate_channels(const CorrelationBlock& B, const DetectionResult& det);

/// Drops columns (and their A_hat rows) whose norm is below `norm_th`.
ChannelEstimate prune_false(const ChannelEstimate& est, double norm_th);

/// mean ||h_hat - h||^2 / mean ||h||^2 over UEs that are solvable in `truth_A`
/// and whose row appears in the estimate. Absent when no UE qualifies.
std::optional<double> nmse(const ChannelEstimate& est, const ChannelMatrix& truth_H,
                           const SelectionMatrix& truth_A);

/// Squared error and true power of one matched UE.
struct MatchedError {
  int ue = 0;
  int column = 0;
  double squared_error = 0.0;
  double power = 0.0;
};

/// The UEs `nmse` averages over, with their per-UE terms. `solvable` is the
/// truth solvability mask.
std::vector<MatchedError> matched_errors(const ChannelEstimate& est, const ChannelMatrix& truth_H,
                                         const SelectionMatrix& truth_A, const std::vector<bool>& solvable);

}  // namespace mpra
