// SPDX-License-Identifier: Apache-2.0

#include "mpra/bounds.hpp"

#include "mpra/common.hpp"

#include <algorithm>
#include <cmath>

namespace mpra {
namespace {

void check(int K, int L, int N) {
  require(K >= 1 && L >= 1 && N >= 1, "K, L and N must be >= 1");
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

/// 1 / K^L without forming K^L.
double inv_choices(int K, int L) { return std::pow(static_cast<double>(K), -L); }

/// Upper limit on the number of rows that can be a combination of n-1 others,
/// divided by K^L.
double span_fraction(int K, int L, int n) {
  const int half = (n - 1 + 1) / 2;  // ceil((n-1)/2)
  return std::pow(static_cast<double>(half) / K, L);
}

/// prod over factors; zero as soon as one factor is non-positive. Accumulated
/// in the log domain so long products of near-one factors keep precision.
template <typename F>
double positive_product(int first, int last, F factor) {
  double log_sum = 0.0;
  for (int j = first; j <= last; ++j) {
    const double f = factor(j);
    if (f <= 0.0) return 0.0;
    log_sum += std::log(f);
  }
  return std::exp(log_sum);
}

double single_exact(int K, int L, int N) {
  const double p = inv_choices(K, L);
  switch (N) {
    case 1: return 1.0;
    case 2: return 1.0 - p;
    default: return (1.0 - p) * (1.0 - p);
  }
}

double all_exact(int K, int L, int N) {
  const double p = inv_choices(K, L);
  switch (N) {
    case 1: return 1.0;
    case 2: return 1.0 - p;
    default: return clamp01((1.0 - p) * (1.0 - 2.0 * p));
  }
}

}  // namespace

double single_user_upper(int K, int L, int N) {
  check(K, L, N);
  const double p = inv_choices(K, L);
  if (p >= 1.0) return N == 1 ? 1.0 : 0.0;
  return clamp01(std::exp((N - 1) * std::log1p(-p)));
}

double single_user_lower(int K, int L, int N) {
  check(K, L, N);
  return clamp01(1.0 - span_fraction(K, L, N));
}

double all_user_upper(int K, int L, int N) {
  check(K, L, N);
  const double p = inv_choices(K, L);
  return clamp01(positive_product(1, N - 1, [p](int j) { return 1.0 - j * p; }));
}

double all_user_lower(int K, int L, int N) {
  check(K, L, N);
  const double base = all_exact(K, L, 3);
  return clamp01(base * positive_product(4, N, [K, L](int n) { return 1.0 - span_fraction(K, L, n); }));
}

BoundSet single_user_bounds(int K, int L, int N) {
  check(K, L, N);
  BoundSet b{K, L, N, std::nullopt, 1.0, 0.0};
  if (N <= 3) {
    b.exact = single_exact(K, L, N);
    b.upper = b.lower = *b.exact;
  } else {
    b.upper = single_user_upper(K, L, N);
    b.lower = single_user_lower(K, L, N);
  }
  return b;
}

BoundSet all_user_bounds(int K, int L, int N) {
  check(K, L, N);
  BoundSet b{K, L, N, std::nullopt, 1.0, 0.0};
  if (N <= 3) {
    b.exact = all_exact(K, L, N);
    b.upper = b.lower = *b.exact;
  } else {
    b.upper = all_user_upper(K, L, N);
    b.lower = all_user_lower(K, L, N);
  }
  return b;
}

std::vector<BoundRow> bound_table(int K, int L, int N_max) {
  require(N_max >= 1, "N_max must be >= 1");
  std::vector<BoundRow> rows;
  rows.reserve(N_max);
  for (int N = 1; N <= N_max; ++N) rows.push_back({single_user_bounds(K, L, N), all_user_bounds(K, L, N)});
  return rows;
}

}  // namespace mpra
