// SPDX-License-Identifier: Apache-2.0

#include "mpra/preamble_space.hpp"

#include <boost/random/uniform_int_distribution.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace mpra {

PreamblePool::PreamblePool(CMatrix sequences) : seq_(std::move(sequences)) {
  require(seq_.rows() >= 1 && seq_.rows() == seq_.cols(), "preamble pool must be square and non-empty");
}

PreamblePool build_pool(int K) {
  require(K >= 1, "pool size K must be >= 1, got " + std::to_string(K));
  CMatrix S(K, K);
  const double scale = 1.0 / std::sqrt(static_cast<double>(K));
  for (int k = 0; k < K; ++k) {
    for (int t = 0; t < K; ++t) {
      // k*t reduced mod K keeps the angle small for large pools.
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % K) / K;
      S(k, t) = std::polar(scale, angle);
    }
  }
  return PreamblePool(std::move(S));
}

SelectionMatrix selection_from_indices(const IMatrix& indices, int K) {
  require(K >= 1, "pool size K must be >= 1");
  require(indices.cols() >= 1, "selection needs at least one phase");
  const auto N = indices.rows();
  const auto L = indices.cols();
  SelectionMatrix out;
  out.K_ = K;
  out.indices_ = indices;
  out.binary_ = IMatrix::Zero(N, K * L);
  for (Eigen::Index n = 0; n < N; ++n) {
    for (Eigen::Index l = 0; l < L; ++l) {
      const int k = indices(n, l);
      if (k < 0 || k >= K) {
        throw InvalidParameter("preamble index " + std::to_string(k) + " outside [0, " +
                               std::to_string(K) + ") at UE " + std::to_string(n) + ", phase " +
                               std::to_string(l));
      }
      out.binary_(n, l * K + k) = 1;
    }
  }
  return out;
}

SelectionMatrix selection_from_binary(const IMatrix& binary, int K, int L) {
  require(K >= 1 && L >= 1, "K and L must be >= 1");
  require(binary.cols() == static_cast<Eigen::Index>(K) * L, "binary matrix must have K*L columns");
  IMatrix idx(binary.rows(), L);
  for (Eigen::Index n = 0; n < binary.rows(); ++n) {
    for (int l = 0; l < L; ++l) {
      int found = -1;
      for (int k = 0; k < K; ++k) {
        const int v = binary(n, l * K + k);
        if (v == 1 && found < 0) {
          found = k;
        } else if (v != 0) {
          throw InvalidParameter("row " + std::to_string(n) + " block " + std::to_string(l) +
                                 " is not a unit vector");
        }
      }
      if (found < 0) {
        throw InvalidParameter("row " + std::to_string(n) + " block " + std::to_string(l) +
                               " has no selected sequence");
      }
      idx(n, l) = found;
    }
  }
  return selection_from_indices(idx, K);
}

SelectionMatrix draw_selection(int K, int L, int N, Rng& rng) {
  require(K >= 1 && L >= 1 && N >= 1, "K, L and N must be >= 1");
  boost::random::uniform_int_distribution<int> pick(0, K - 1);
  IMatrix idx(N, L);
  for (int n = 0; n < N; ++n) {
    for (int l = 0; l < L; ++l) idx(n, l) = pick(rng);
  }
  return selection_from_indices(idx, K);
}

int rank_exact(const IMatrix& A) {
  using Wide = __int128;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> a =
      A.cast<std::int64_t>();
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  std::int64_t prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const std::int64_t pivot = a(r, c);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      const std::int64_t lead = a(i, c);
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        const Wide v = (static_cast<Wide>(pivot) * a(i, j) - static_cast<Wide>(lead) * a(r, j)) / prev;
        if (v > INT64_MAX || v < INT64_MIN) throw ResourceLimit("rank_exact: minor exceeds 64 bits");
        a(i, j) = static_cast<std::int64_t>(v);
      }
      a(i, c) = 0;
    }
    prev = pivot;
    ++r;
  }
  return static_cast<int>(r);
}

RankReport solvability_by_rank(const IMatrix& A) {
  const int N = static_cast<int>(A.rows());
  RankReport rep;
  rep.rank = rank_exact(A);
  rep.full_row_rank = rep.rank == N;
  rep.solvable_mask.assign(N, false);
  for (int n = 0; n < N; ++n) {
    IMatrix reduced(N - 1, A.cols());
    for (int i = 0, o = 0; i < N; ++i) {
      if (i != n) reduced.row(o++) = A.row(i);
    }
    rep.solvable_mask[n] = rep.rank > rank_exact(reduced);
  }
  return rep;
}

RankReport solvability(const SelectionMatrix& A) {
  const int N = A.N();
  const int L = A.L();
  const int K = A.K();
  const IMatrix& idx = A.indices();

  RankReport rep;
  rep.solvable_mask.assign(N, false);

  // Group identical rows; a duplicated row lies in the span of its twin.
  std::vector<int> rep_of(N, -1);
  std::vector<int> multiplicity(N, 0);
  std::vector<int> uniq;
  for (int n = 0; n < N; ++n) {
    for (int u : uniq) {
      if (idx.row(n) == idx.row(u)) {
        rep_of[n] = u;
        break;
      }
    }
    if (rep_of[n] < 0) {
      rep_of[n] = n;
      uniq.push_back(n);
    }
    ++multiplicity[rep_of[n]];
  }

  // Peel rows that own a column no other remaining row touches. Such a row is
  // outside the span of the rest and never appears in a linear dependency, so
  // removing it leaves the other rows' status unchanged and lowers the rank
  // by exactly one.
  std::vector<int> col_count(static_cast<std::size_t>(K) * L, 0);
  for (int u : uniq) {
    for (int l = 0; l < L; ++l) ++col_count[l * K + idx(u, l)];
  }
  std::vector<bool> alive(N, false);
  for (int u : uniq) alive[u] = true;
  int peeled = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u : uniq) {
      if (!alive[u]) continue;
      bool owns = false;
      for (int l = 0; l < L && !owns; ++l) owns = col_count[l * K + idx(u, l)] == 1;
      if (!owns) continue;
      alive[u] = false;
      ++peeled;
      changed = true;
      for (int l = 0; l < L; ++l) --col_count[l * K + idx(u, l)];
      if (multiplicity[u] == 1) rep.solvable_mask[u] = true;
    }
  }

  std::vector<int> core;
  for (int u : uniq) {
    if (alive[u]) core.push_back(u);
  }
  int core_rank = 0;
  if (!core.empty()) {
    IMatrix C(static_cast<Eigen::Index>(core.size()), A.binary().cols());
    for (std::size_t i = 0; i < core.size(); ++i) C.row(i) = A.binary().row(core[i]);
    core_rank = rank_exact(C);
    const bool core_full = core_rank == static_cast<int>(core.size());
    for (std::size_t i = 0; i < core.size(); ++i) {
      const int u = core[i];
      if (multiplicity[u] != 1) continue;
      if (core_full) {
        rep.solvable_mask[u] = true;
        continue;
      }
      IMatrix reduced(C.rows() - 1, C.cols());
      for (Eigen::Index r = 0, o = 0; r < C.rows(); ++r) {
        if (r != static_cast<Eigen::Index>(i)) reduced.row(o++) = C.row(r);
      }
      rep.solvable_mask[u] = rank_exact(reduced) < core_rank;
    }
  }

  rep.rank = peeled + core_rank;
  rep.full_row_rank = rep.rank == N;
  return rep;
}

SolvableProbabilities enumerate_solvable_probabilities(int K, int L, int N,
                                                       std::int64_t max_instances) {
  require(K >= 1 && L >= 1 && N >= 1, "K, L and N must be >= 1");
  const int digits = L * N;
  std::int64_t total = 1;
  for (int d = 0; d < digits; ++d) {
    if (total > max_instances / K) {
      throw ResourceLimit("enumeration of (K^L)^N instances exceeds " + std::to_string(max_instances));
    }
    total *= K;
  }

  // Mixed-radix counter over all N*L index entries.
  IMatrix idx = IMatrix::Zero(N, L);
  std::int64_t single = 0;
  std::int64_t all = 0;
  for (std::int64_t it = 0; it < total; ++it) {
    const RankReport rep = solvability_by_rank(selection_from_indices(idx, K).binary());
    single += rep.solvable_mask[N - 1] ? 1 : 0;
    all += rep.full_row_rank ? 1 : 0;
    for (int d = digits - 1; d >= 0; --d) {
      int& digit = idx(d / L, d % L);
      if (++digit < K) break;
      digit = 0;
    }
  }
  return {Rational(single, total), Rational(all, total)};
}

}  // namespace mpra
