// SPDX-License-Identifier: Apache-2.0
//
// Closed-form solvable rates: exact values for up to three UEs and
// upper/lower bounds beyond.

#pragma once

#include <optional>
#include <vector>

namespace mpra {

struct BoundSet {
  int K = 0;
  int L = 0;
  int N = 0;
  std::optional<double> exact;  ///< present iff N <= 3
  double upper = 1.0;
  double lower = 0.0;
};

/// Probability that a given UE's selection vector is outside the span of the
/// other N-1 UEs' vectors.
BoundSet single_user_bounds(int K, int L, int N);

/// Probability that the selection matrix has full row rank.
BoundSet all_user_bounds(int K, int L, int N);

/// Upper bound (1 - K^-L)^(N-1), defined for every N >= 1.
double single_user_upper(int K, int L, int N);
/// Lower bound 1 - ceil((N-1)/2)^L / K^L clamped to [0, 1].
double single_user_lower(int K, int L, int N);
/// Probability that N vectors drawn from K^L choices are pairwise distinct.
double all_user_upper(int K, int L, int N);
/// Exact three-UE rate times one span-size factor per additional UE, clamped.
double all_user_lower(int K, int L, int N);

struct BoundRow {
  BoundSet single_user;
  BoundSet all_user;
};

/// Both families for N = 1 .. N_max.
std::vector<BoundRow> bound_table(int K, int L, int N_max);

}  // namespace mpra
