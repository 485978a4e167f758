// SPDX-License-Identifier: Apache-2.0

#include "mpra/airlink.hpp"

#include <cmath>
#include <string>

namespace mpra {

NoiseSpec NoiseSpec::from_snr_db(double snr_db, int M, int K) {
  require(M >= 1 && K >= 1, "M and K must be >= 1");
  require(!std::isnan(snr_db), "SNR must not be NaN");
  if (std::isinf(snr_db) && snr_db > 0) return {snr_db, 0.0};
  require(std::isfinite(snr_db), "SNR of -inf has no finite noise variance");
  return {snr_db, 1.0 / (static_cast<double>(M) * K * std::pow(10.0, snr_db / 10.0))};
}

namespace {

void check_dims(const ChannelMatrix& H, const SelectionMatrix& A) {
  if (H.N() != A.N()) {
    throw InvalidParameter("channel has " + std::to_string(H.N()) + " UEs but selection has " +
                           std::to_string(A.N()));
  }
}

}  // namespace

std::vector<CMatrix> synthesize_received(const ChannelMatrix& H, const SelectionMatrix& A,
                                         const PreamblePool& pool, const NoiseSpec& noise, Rng& rng) {
  check_dims(H, A);
  if (pool.size() != A.K()) {
    throw InvalidParameter("pool size " + std::to_string(pool.size()) + " does not match selection K " +
                           std::to_string(A.K()));
  }
  const int K = A.K();
  std::vector<CMatrix> Y;
  Y.reserve(A.L());
  for (int l = 0; l < A.L(); ++l) {
    const CMatrix P = A.phase_block(l).cast<Complex>() * pool.sequences();
    CMatrix Yl = H.H * P;
    if (!noise.silent()) Yl += complex_gaussian_matrix(H.M(), K, rng, noise.sigma2);
    Y.push_back(std::move(Yl));
  }
  return Y;
}

CorrelationBlock correlate_pool(const std::vector<CMatrix>& Y, const PreamblePool& pool) {
  require(!Y.empty(), "need at least one phase");
  const int K = pool.size();
  const auto M = Y.front().rows();
  CorrelationBlock out{CMatrix(M, static_cast<Eigen::Index>(K) * Y.size()), K, static_cast<int>(Y.size())};
  const CMatrix SH = pool.sequences().adjoint();
  for (std::size_t l = 0; l < Y.size(); ++l) {
    if (Y[l].rows() != M || Y[l].cols() != K) throw InvalidParameter("received block has wrong shape");
    out.B.middleCols(static_cast<Eigen::Index>(l) * K, K).noalias() = Y[l] * SH;
  }
  return out;
}

CorrelationBlock synthesize_correlation_fast(const ChannelMatrix& H, const SelectionMatrix& A,
                                             const NoiseSpec& noise, Rng& rng) {
  check_dims(H, A);
  CorrelationBlock out{CMatrix::Zero(H.M(), static_cast<Eigen::Index>(A.K()) * A.L()), A.K(), A.L()};
  // H A is a sum of channel columns into the selected columns.
  const IMatrix& idx = A.indices();
  for (int n = 0; n < A.N(); ++n) {
    for (int l = 0; l < A.L(); ++l) out.B.col(l * A.K() + idx(n, l)) += H.H.col(n);
  }
  if (!noise.silent()) out.B += complex_gaussian_matrix(H.M(), out.B.cols(), rng, noise.sigma2);
  return out;
}

}  // namespace mpra
