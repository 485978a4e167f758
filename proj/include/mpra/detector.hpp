// SPDX-License-Identifier: Apache-2.0
//
// Super-preamble detection from cross-phase correlations.

#pragma once

#include "mpra/airlink.hpp"
#include "mpra/preamble_space.hpp"

#include <cstdint>
#include <vector>

namespace mpra {

/// C_{l,l'} = B_l^H B_{l'} for every phase pair l < l'.
class PhasePairCorrelations {
 public:
  PhasePairCorrelations(int K, int L, std::vector<CMatrix> blocks);

  int K() const { return K_; }
  int L() const { return L_; }
  std::size_t size() const { return blocks_.size(); }

  /// Requires l < lp.
  const CMatrix& at(int l, int lp) const { return blocks_[slot(l, lp)]; }

 private:
  std::size_t slot(int l, int lp) const;

  int K_;
  int L_;
  std::vector<CMatrix> blocks_;  // row-major over (l, lp), l < lp
};

struct DetectionResult {
  /// One row per detected tuple, rows in lexicographic tuple order.
  SelectionMatrix A_hat;
  double threshold = 0.0;

  int count() const { return A_hat.N(); }
};

/// Throws InvalidParameter when L < 2.
PhasePairCorrelations cross_correlations(const CorrelationBlock& B);

constexpr std::int64_t kDefaultSearchCap = 1'000'000;

/// All tuples (theta_1 .. theta_L) with |C_{l,l'}(theta_l, theta_l')| > th for
/// every pair l < l'. The K^L space is walked in lexicographic order and a
/// prefix is abandoned at its first failing pair, which returns exactly the
/// tuples a flat exhaustive scan would. Throws ResourceLimit if K^L exceeds
/// `search_cap`.
DetectionResult detect(const PhasePairCorrelations& C, double th, std::int64_t search_cap = kDefaultSearchCap);

/// Single-preamble baseline: sequence k is reported iff the norm of column k
/// of B_1 exceeds `energy_th`. Throws InvalidParameter unless L == 1.
DetectionResult detect_single_phase(const CorrelationBlock& B, double energy_th);

}  // namespace mpra
