// SPDX-License-Identifier: Apache-2.0

#include "mpra/preamble_space.hpp"
#include "unit/oracles.hpp"

#include <doctest.h>

#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mpra;

namespace {

IMatrix idx(std::initializer_list<std::initializer_list<int>> rows) {
  IMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_SUITE("preamble_space") {

TEST_CASE("pool of size one is the scalar 1") {
  const auto pool = build_pool(1);
  REQUIRE(pool.size() == 1);
  CHECK(std::abs(pool.sequences()(0, 0) - Complex(1, 0)) < 1e-15);
}

TEST_CASE("pool is unitary") {
  for (int K : {2, 3, 4, 7, 16}) {
    const CMatrix S = build_pool(K).sequences();
    CHECK((S * S.adjoint() - CMatrix::Identity(K, K)).norm() < 1e-10);
  }
}

TEST_CASE("48 sequences are pairwise orthogonal") {
  const CMatrix S = build_pool(48).sequences();
  const CMatrix G = S * S.adjoint();
  double worst = 0.0;
  for (int i = 0; i < 48; ++i)
    for (int j = 0; j < 48; ++j)
      if (i != j) worst = std::max(worst, std::abs(G(i, j)));
  CHECK(worst < 1e-10);
}

TEST_CASE("invalid pools") {
  CHECK_THROWS_AS(build_pool(0), InvalidParameter);
  CHECK_THROWS_AS(PreamblePool(CMatrix(2, 3)), InvalidParameter);
}

TEST_CASE("selection row from indices") {
  // (1,2),(1,1),(3,2) in 1-based terms
  const auto A = selection_from_indices(idx({{0, 1}, {0, 0}, {2, 1}}), 4);
  Eigen::RowVectorXi expect(8);
  expect << 1, 0, 0, 0, 1, 0, 0, 0;
  CHECK(A.binary().row(1) == expect);
  CHECK(A.N() == 3);
  CHECK(A.L() == 2);
  CHECK(A.K() == 4);
}

TEST_CASE("3x6 selection matrix") {
  const auto A = selection_from_indices(idx({{0, 0}, {0, 1}, {2, 0}}), 3);
  IMatrix expect(3, 6);
  expect << 1, 0, 0, 1, 0, 0,
            1, 0, 0, 0, 1, 0,
            0, 0, 1, 1, 0, 0;
  CHECK(A.binary() == expect);
  CHECK(rank_exact(A.binary()) == 3);
  CHECK(oracle::rational_rank(A.binary()) == 3);
}

TEST_CASE("collision gives identical rows") {
  const auto A = selection_from_indices(idx({{0}, {0}}), 2);
  CHECK(A.binary().row(0) == A.binary().row(1));
  CHECK(A.binary()(0, 0) == 1);
  CHECK(A.binary()(0, 1) == 0);
}

TEST_CASE("out of range index rejected") {
  CHECK_THROWS_AS(selection_from_indices(idx({{0, 3}}), 3), InvalidParameter);
  CHECK_THROWS_AS(selection_from_indices(idx({{-1, 0}}), 3), InvalidParameter);
}

TEST_CASE("binary round trip and malformed binary") {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto A = draw_selection(5, 3, 6, rng);
    const auto B = selection_from_binary(A.binary(), 5, 3);
    CHECK(A == B);
    CHECK(selection_from_indices(B.indices(), 5) == A);
  }
  IMatrix bad = IMatrix::Zero(1, 4);
  bad(0, 0) = 1;
  CHECK_THROWS_AS(selection_from_binary(bad, 2, 2), InvalidParameter);
  bad(0, 2) = 1;
  bad(0, 3) = 1;
  CHECK_THROWS_AS(selection_from_binary(bad, 2, 2), InvalidParameter);
}

TEST_CASE("K = 1 selects the only sequence everywhere") {
  Rng rng(1);
  const auto A = draw_selection(1, 3, 4, rng);
  CHECK(A.binary() == IMatrix::Ones(4, 3));
}

TEST_CASE("row and block sums") {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto A = draw_selection(6, 3, 9, rng);
    CHECK((A.binary().rowwise().sum().array() == 3).all());
    for (int l = 0; l < 3; ++l) CHECK((A.phase_block(l).rowwise().sum().array() == 1).all());
  }
}

TEST_CASE("index draws are uniform") {
  Rng rng(2024);
  std::vector<int> freq(8, 0);
  const int draws = 100000;
  for (int t = 0; t < draws / 2; ++t) {
    const auto A = draw_selection(8, 2, 1, rng);
    ++freq[A.indices()(0, 0)];
    ++freq[A.indices()(0, 1)];
  }
  const double p = 1.0 / 8;
  const double sd = std::sqrt(draws * p * (1 - p));
  for (int f : freq) CHECK(std::abs(f - draws * p) < 4 * sd);
}

TEST_CASE("rank examples") {
  IMatrix dup(2, 4);
  dup << 1, 0, 1, 0,
         1, 0, 1, 0;
  CHECK(rank_exact(dup) == 1);
  CHECK(rank_exact(IMatrix(0, 6)) == 0);
  CHECK(rank_exact(IMatrix::Zero(3, 3)) == 0);
}

TEST_CASE("rank agrees with rational elimination") {
  Rng rng(5);
  boost::random::uniform_int_distribution<int> bit(0, 1), small(-3, 3), dim(1, 9);
  for (int t = 0; t < 400; ++t) {
    const int r = dim(rng), c = dim(rng);
    IMatrix A(r, c);
    const bool signed_entries = t % 2 == 1;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) A(i, j) = signed_entries ? small(rng) : bit(rng);
    CHECK(rank_exact(A) == oracle::rational_rank(A));
  }
}

TEST_CASE("rank invariant under permutation and duplication") {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto A = draw_selection(3, 2, 5, rng);
    const int r = rank_exact(A.binary());
    IMatrix P = A.binary().colwise().reverse();
    CHECK(rank_exact(P) == r);
    IMatrix D(6, 6);
    D.topRows(5) = A.binary();
    D.row(5) = A.binary().row(t % 5);
    CHECK(rank_exact(D) == r);
  }
}

TEST_CASE("rank overflow is reported") {
  IMatrix A(4, 4);
  A << 1000000, 3, 7, 2,
       5, 1000000, 11, 13,
       17, 19, 1000000, 23,
       29, 31, 37, 1000000;
  CHECK_THROWS_AS(rank_exact(A), ResourceLimit);
}

TEST_CASE("solvability examples") {
  auto two = solvability(selection_from_indices(idx({{0, 1}, {1, 1}}), 3));
  CHECK(two.solvable_mask == std::vector<bool>{true, true});
  CHECK(two.full_row_rank);

  auto three = solvability(selection_from_indices(idx({{0, 1}, {0, 1}, {2, 0}}), 3));
  CHECK(three.solvable_mask == std::vector<bool>{false, false, true});
  CHECK(three.rank == 2);
  CHECK_FALSE(three.full_row_rank);

  auto one = solvability(selection_from_indices(idx({{2, 2}}), 3));
  CHECK(one.solvable_mask == std::vector<bool>{true});
}

TEST_CASE("rectangle dependency") {
  // a4 = a1 + a2 - a3; all rows distinct yet none of the four is solvable.
  const auto A = selection_from_indices(idx({{0, 0}, {1, 1}, {0, 1}, {1, 0}, {2, 2}}), 3);
  const auto rep = solvability(A);
  CHECK(rep.solvable_mask == std::vector<bool>{false, false, false, false, true});
  CHECK(rep.rank == 4);
}

TEST_CASE("fast solvability matches the literal rank test") {
  Rng rng(99);
  struct Shape { int K, L, Nmax; };
  for (const Shape s : {Shape{2, 2, 8}, Shape{3, 2, 10}, Shape{3, 3, 14}, Shape{4, 2, 12}, Shape{2, 3, 9},
                        Shape{5, 1, 8}, Shape{16, 2, 20}}) {
    for (int N = 1; N <= s.Nmax; ++N) {
      for (int t = 0; t < 30; ++t) {
        const auto A = draw_selection(s.K, s.L, N, rng);
        const auto fast = solvability(A);
        const auto slow = solvability_by_rank(A.binary());
        CHECK(fast.rank == slow.rank);
        CHECK(fast.full_row_rank == slow.full_row_rank);
        CHECK(fast.solvable_mask == slow.solvable_mask);
      }
    }
  }
}

TEST_CASE("solvability matches span membership") {
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    const int N = 1 + t % 6;
    const auto A = draw_selection(3, 2, N, rng);
    const auto rep = solvability(A);
    for (int n = 0; n < N; ++n) {
      const bool member = N > 1 && oracle::in_span(oracle::drop_row(A.binary(), n), A.binary().row(n));
      CHECK(rep.solvable_mask[n] == !member);
    }
  }
}

TEST_CASE("up to three UEs: solvable iff pairwise distinct") {
  Rng rng(6);
  for (int t = 0; t < 500; ++t) {
    const int N = 1 + t % 3;
    const auto A = draw_selection(2, 2, N, rng);
    const auto rep = solvability(A);
    for (int n = 0; n < N; ++n) {
      bool distinct = true;
      for (int m = 0; m < N; ++m)
        if (m != n && A.row_equals(n, A, m)) distinct = false;
      CHECK(rep.solvable_mask[n] == distinct);
    }
  }
}

TEST_CASE("enumeration examples") {
  auto p = enumerate_solvable_probabilities(2, 1, 2);
  CHECK(p.single_user == Rational(1, 2));
  CHECK(p.all_user == Rational(1, 2));
  p = enumerate_solvable_probabilities(2, 2, 2);
  CHECK(p.single_user == Rational(3, 4));
  CHECK(p.all_user == Rational(3, 4));
  p = enumerate_solvable_probabilities(2, 1, 3);
  CHECK(p.all_user == Rational(0));
}

TEST_CASE("enumeration equals closed forms up to three UEs") {
  for (int K : {2, 3, 4, 5}) {
    for (int L : {1, 2}) {
      std::int64_t c = 1;
      for (int l = 0; l < L; ++l) c *= K;
      const Rational p(1, c);
      const Rational one(1);
      for (int N = 1; N <= 3; ++N) {
        const auto e = enumerate_solvable_probabilities(K, L, N);
        const Rational single = N == 1 ? one : N == 2 ? one - p : (one - p) * (one - p);
        const Rational all = N == 1 ? one : N == 2 ? one - p : (one - p) * (one - 2 * p);
        CHECK(e.single_user == single);
        CHECK(e.all_user == std::max(all, Rational(0)));
      }
    }
  }
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_solvable_probabilities(16, 2, 4), ResourceLimit);
  CHECK_THROWS_AS(enumerate_solvable_probabilities(4, 2, 3, 100), ResourceLimit);
  CHECK_THROWS_AS(enumerate_solvable_probabilities(0, 2, 3), InvalidParameter);
}

TEST_CASE("span candidates beyond the existing rows obey the half-count bound") {
  Rng rng(12);
  for (int K : {2, 3, 4}) {
    for (int L : {1, 2}) {
      const auto tuples = oracle::all_tuples(K, L);
      for (int N = 2; N <= 6; ++N) {
        const int half = N / 2;  // ceil((N-1)/2)
        const double cap = std::pow(half, L);
        for (int t = 0; t < 15; ++t) {
          const auto prev = draw_selection(K, L, N - 1, rng);
          int fresh = 0;
          for (const auto& tup : tuples) {
            const auto r = oracle::tuple_row(tup, K);
            bool existing = false;
            for (int n = 0; n < N - 1; ++n) existing = existing || prev.binary().row(n) == r;
            if (!existing && oracle::in_span(prev.binary(), r)) ++fresh;
          }
          CHECK(fresh <= cap);
        }
      }
    }
  }
}

TEST_CASE("span candidates counting earlier rows can exceed the half-count bound") {
  // Four earlier rows hold a 2x2 rectangle plus one more tuple: the span
  // contains all four rows and the rectangle's fourth corner.
  const auto prev = selection_from_indices(idx({{0, 0}, {1, 1}, {0, 1}, {2, 2}}), 4);
  int members = 0;
  for (const auto& tup : oracle::all_tuples(4, 2)) members += oracle::in_span(prev.binary(), oracle::tuple_row(tup, 4));
  CHECK(members == 5);
  CHECK(members > 4);  // ceil(4/2)^2
}

}  // TEST_SUITE
