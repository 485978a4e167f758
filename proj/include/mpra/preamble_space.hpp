// SPDX-License-Identifier: Apache-2.0
//
// Orthogonal preamble pool, preamble selection matrices and exact
// solvability decisions.

#pragma once

#include "mpra/common.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <vector>

namespace mpra {

using Rational = boost::rational<std::int64_t>;

/// K orthogonal length-K sequences; row k of `sequences()` is s_k and
/// S * S^H = I.
class PreamblePool {
 public:
  explicit PreamblePool(CMatrix sequences);

  int size() const { return static_cast<int>(seq_.rows()); }
  const CMatrix& sequences() const { return seq_; }

 private:
  CMatrix seq_;
};

/// Normalized DFT pool. Throws InvalidParameter for K < 1.
PreamblePool build_pool(int K);

/// Which sequence every UE sends in every phase.
///
/// Held as an N x L index array (0-based sequence index per UE and phase)
/// together with the equivalent N x KL binary matrix whose row n has a
/// single one at column l*K + index(n, l) in every length-K block l.
/// N = 0 is allowed so that empty detection results share the type.
class SelectionMatrix {
 public:
  SelectionMatrix() = default;

  int K() const { return K_; }
  int L() const { return static_cast<int>(indices_.cols()); }
  int N() const { return static_cast<int>(indices_.rows()); }

  const IMatrix& indices() const { return indices_; }
  const IMatrix& binary() const { return binary_; }

  /// Binary matrix cast to a floating or complex scalar.
  template <typename Scalar>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> as() const {
    return binary_.cast<Scalar>();
  }

  /// Columns l*K .. l*K+K-1 of the binary matrix.
  IMatrix phase_block(int l) const { return binary_.middleCols(l * K_, K_); }

  bool row_equals(int n, const SelectionMatrix& other, int m) const {
    return indices_.row(n) == other.indices_.row(m);
  }

  friend bool operator==(const SelectionMatrix& a, const SelectionMatrix& b) {
    return a.K_ == b.K_ && a.indices_.rows() == b.indices_.rows() &&
           a.indices_.cols() == b.indices_.cols() && a.indices_ == b.indices_;
  }

 private:
  friend SelectionMatrix selection_from_indices(const IMatrix&, int);
  friend SelectionMatrix selection_from_binary(const IMatrix&, int, int);

  int K_ = 0;
  IMatrix indices_;
  IMatrix binary_;
};

/// Builds a selection from 0-based indices (entries in [0, K)).
SelectionMatrix selection_from_indices(const IMatrix& indices, int K);

/// Recovers the selection from its binary form; throws if any length-K block
/// of a row does not hold exactly one 1.
SelectionMatrix selection_from_binary(const IMatrix& binary, int K, int L);

/// Every UE picks each phase's sequence independently and uniformly.
SelectionMatrix draw_selection(int K, int L, int N, Rng& rng);

/// Rank over the rationals by fraction-free (Bareiss) elimination. Entries
/// may be any integers small enough that all minors fit in 64 bits.
int rank_exact(const IMatrix& A);

struct RankReport {
  int rank = 0;
  bool full_row_rank = false;
  /// solvable_mask[n] is true iff row n is not a linear combination of the
  /// other rows.
  std::vector<bool> solvable_mask;
};

/// Exact solvability of every UE.
///
/// Row n is solvable iff rank(A) > rank(A without row n). Duplicate rows and
/// rows holding a column no remaining row uses are decided combinatorially;
/// the two-rank test runs only on the residual core.
RankReport solvability(const SelectionMatrix& A);

/// Same decision, computed literally as N+1 independent rank evaluations.
RankReport solvability_by_rank(const IMatrix& A);

struct SolvableProbabilities {
  Rational single_user;  ///< fraction of instances where the last UE is solvable
  Rational all_user;     ///< fraction of instances with full row rank
};

/// Exhaustive average over all (K^L)^N equiprobable selections. Throws
/// ResourceLimit when (K^L)^N exceeds `max_instances`.
SolvableProbabilities enumerate_solvable_probabilities(int K, int L, int N,
                                                       std::int64_t max_instances = 10'000'000);

}  // namespace mpra
