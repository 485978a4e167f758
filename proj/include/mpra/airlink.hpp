// SPDX-License-Identifier: Apache-2.0
//
// Base-station observations: per-phase received preamble signals and their
// correlation with the pool.

#pragma once

#include "mpra/channel.hpp"
#include "mpra/preamble_space.hpp"

#include <limits>
#include <vector>

namespace mpra {

/// Per-sample complex noise variance for a given SNR.
///
/// SNR is the ratio, at one antenna, of the expected energy of one UE's
/// preamble over a phase (E||h||^2 ||s_k||^2 / M = 1/M) to the noise energy
/// over the same K samples (K sigma2), so sigma2 = 1 / (M K 10^(snr_db/10)).
/// An infinite SNR means no noise.
struct NoiseSpec {
  double snr_db = std::numeric_limits<double>::infinity();
  double sigma2 = 0.0;

  static NoiseSpec from_snr_db(double snr_db, int M, int K);
  static NoiseSpec noiseless() { return {}; }
  bool silent() const { return sigma2 == 0.0; }
};

/// B = [B_1 .. B_L], M x KL.
struct CorrelationBlock {
  CMatrix B;
  int K = 0;
  int L = 0;

  int M() const { return static_cast<int>(B.rows()); }
  auto phase(int l) const { return B.middleCols(static_cast<Eigen::Index>(l) * K, K); }
};

/// Y_l = H A_l S + N_l for every phase.
std::vector<CMatrix> synthesize_received(const ChannelMatrix& H, const SelectionMatrix& A,
                                         const PreamblePool& pool, const NoiseSpec& noise, Rng& rng);

/// B_l = Y_l S^H.
CorrelationBlock correlate_pool(const std::vector<CMatrix>& Y, const PreamblePool& pool);

/// Draws B = H A + W directly. Same distribution as the two-step path because
/// W_l = N_l S^H is white whenever S is unitary.
CorrelationBlock synthesize_correlation_fast(const ChannelMatrix& H, const SelectionMatrix& A,
                                             const NoiseSpec& noise, Rng& rng);

}  // namespace mpra
