// SPDX-License-Identifier: Apache-2.0

#include "mpra/estimator.hpp"
#include "unit/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace mpra;

namespace {

DetectionResult as_detection(const SelectionMatrix& A) { return {A, 0.4}; }

SelectionMatrix full_rank_draw(int K, int L, int N, Rng& rng) {
  for (;;) {
    auto A = draw_selection(K, L, N, rng);
    if (solvability(A).full_row_rank) return A;
  }
}

SelectionMatrix permute_rows(const SelectionMatrix& A, const std::vector<int>& perm) {
  IMatrix idx(A.N(), A.L());
  for (int n = 0; n < A.N(); ++n) idx.row(n) = A.indices().row(perm[n]);
  return selection_from_indices(idx, A.K());
}

}  // namespace

TEST_SUITE("estimator") {

TEST_CASE("pseudo-inverse contract") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto A = draw_selection(3 + t % 3, 1 + t % 3, 1 + t % 9, rng);
    const Eigen::MatrixXd X = A.as<double>();
    const Eigen::MatrixXd P = pseudo_inverse(X);
    CHECK((X * P * X - X).norm() < 1e-8);
    CHECK((P * X * P - P).norm() < 1e-8);
    CHECK((X * P - (X * P).transpose()).norm() < 1e-8);
    CHECK((P * X - (P * X).transpose()).norm() < 1e-8);
  }
  const CMatrix Z = complex_gaussian_matrix(5, 3, rng);
  const CMatrix Zp = pseudo_inverse(Z);
  CHECK((Zp * Z - CMatrix::Identity(3, 3)).norm() < 1e-10);
  CHECK(pseudo_inverse(Eigen::MatrixXd(0, 4)).rows() == 4);
}

TEST_CASE("single UE pinv row norm") {
  const auto A = selection_from_indices(IMatrix::Constant(1, 3, 2), 16);
  const Eigen::MatrixXd P = pseudo_inverse(A.as<double>());
  CHECK(P.squaredNorm() == doctest::Approx(1.0 / 3));
}

TEST_CASE("noiseless exact recovery") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto A = full_rank_draw(6, 2 + t % 2, 1 + t % 8, rng);
    const auto H = iid_rayleigh(32, A.N(), rng);
    const auto B = synthesize_correlation_fast(H, A, NoiseSpec::noiseless(), rng);
    const auto est = estimate_channels(B, as_detection(A));
    CHECK((est.H_hat - H.H).norm() <= 1e-8 * H.H.norm());
    const auto kept = prune_false(est, 0.5);
    CHECK(kept.A_hat.N() == A.N());
    const auto e = nmse(kept, H, A);
    REQUIRE(e.has_value());
    CHECK(*e < 1e-20);
  }
}

TEST_CASE("false row has a near-zero column and is pruned") {
  Rng rng(3);
  const int K = 8;
  int tried = 0;
  while (tried < 100) {
    const auto A = full_rank_draw(K, 2, 4, rng);
    IMatrix idx(5, 2);
    idx.topRows(4) = A.indices();
    idx(4, 0) = static_cast<int>(rng() % K);
    idx(4, 1) = static_cast<int>(rng() % K);
    const auto Ahat = selection_from_indices(idx, K);
    if (!solvability(Ahat).full_row_rank) continue;
    ++tried;
    const auto H = iid_rayleigh(128, 4, rng);
    const auto B = synthesize_correlation_fast(H, A, NoiseSpec::noiseless(), rng);
    const auto est = estimate_channels(B, as_detection(Ahat));
    CHECK(est.H_hat.col(4).norm() < 0.05);
    const auto kept = prune_false(est, 0.5);
    CHECK(kept.A_hat.N() == 4);
    CHECK(kept.kept == std::vector<bool>{true, true, true, true, false});
    CHECK((kept.H_hat - H.H).norm() < 1e-8);
  }
}

TEST_CASE("rank-deficient detection still estimates") {
  Rng rng(4);
  IMatrix idx(4, 2);
  idx << 0, 0,
         1, 1,
         0, 1,
         1, 0;
  const auto A = selection_from_indices(idx, 3);
  const auto H = iid_rayleigh(16, 4, rng);
  const auto B = synthesize_correlation_fast(H, A, NoiseSpec::noiseless(), rng);
  const auto est = estimate_channels(B, as_detection(A));
  CHECK(est.H_hat.allFinite());
  CHECK((est.H_hat * A.as<Complex>() - B.B).norm() < 1e-8);
  // no UE is solvable, so nothing enters the error average
  CHECK_FALSE(nmse(est, H, A).has_value());
}

TEST_CASE("empty detection") {
  CorrelationBlock B{CMatrix::Zero(8, 6), 3, 2};
  DetectionResult det{selection_from_indices(IMatrix(0, 2), 3), 0.4};
  const auto est = estimate_channels(B, det);
  CHECK(est.H_hat.rows() == 8);
  CHECK(est.H_hat.cols() == 0);
  Rng rng(5);
  const auto A = draw_selection(3, 2, 2, rng);
  CHECK_FALSE(nmse(est, iid_rayleigh(8, 2, rng), A).has_value());
}

TEST_CASE("zero threshold keeps everything") {
  Rng rng(6);
  const auto A = draw_selection(5, 2, 4, rng);
  const auto H = iid_rayleigh(16, 4, rng);
  const auto est = estimate_channels(synthesize_correlation_fast(H, A, NoiseSpec::from_snr_db(0, 16, 5), rng),
                                     as_detection(A));
  const auto same = prune_false(est, 0.0);
  CHECK(same.H_hat == est.H_hat);
  CHECK(same.A_hat == est.A_hat);
  CHECK_THROWS_AS(prune_false(est, -1.0), InvalidParameter);
}

TEST_CASE("single UE NMSE follows the noise propagation") {
  Rng rng(7);
  const int K = 16, L = 3, M = 128;
  const auto noise = NoiseSpec::from_snr_db(0.0, M, K);
  double err = 0.0, pow = 0.0;
  for (int t = 0; t < 3000; ++t) {
    const auto A = draw_selection(K, L, 1, rng);
    const auto H = iid_rayleigh(M, 1, rng);
    const auto est = estimate_channels(synthesize_correlation_fast(H, A, noise, rng), as_detection(A));
    const auto m = matched_errors(est, H, A, {true});
    REQUIRE(m.size() == 1);
    err += m[0].squared_error;
    pow += m[0].power;
  }
  const double analytic = M * noise.sigma2 / L;
  CHECK(analytic == doctest::Approx(1.0 / (3 * K)));
  CHECK(err / pow == doctest::Approx(analytic).epsilon(0.05));
}

TEST_CASE("NMSE ignores the order of detected rows") {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto A = draw_selection(6, 2, 5, rng);
    const auto H = iid_rayleigh(32, 5, rng);
    const auto B = synthesize_correlation_fast(H, A, NoiseSpec::from_snr_db(5, 32, 6), rng);
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::swap(perm[0], perm[2]);
    const auto a = nmse(estimate_channels(B, as_detection(A)), H, A);
    const auto b = nmse(estimate_channels(B, as_detection(permute_rows(A, perm))), H, A);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(*a == doctest::Approx(*b).epsilon(1e-10));
  }
}

TEST_CASE("matching is exact row equality over solvable UEs") {
  Rng rng(9);
  IMatrix idx(3, 2);
  idx << 0, 0,
         0, 0,
         2, 1;
  const auto A = selection_from_indices(idx, 3);
  const auto H = iid_rayleigh(8, 3, rng);
  const auto B = synthesize_correlation_fast(H, A, NoiseSpec::noiseless(), rng);
  IMatrix det_idx(2, 2);
  det_idx << 0, 0,
             2, 1;
  const auto est = estimate_channels(B, as_detection(selection_from_indices(det_idx, 3)));
  const auto m = matched_errors(est, H, A, solvability(A).solvable_mask);
  REQUIRE(m.size() == 1);
  CHECK(m[0].ue == 2);
  CHECK(m[0].column == 1);
  CHECK(m[0].squared_error < 1e-20);
}

}  // TEST_SUITE
