// SPDX-License-Identifier: Apache-2.0

#include "mpra/detector.hpp"

#include <string>

namespace mpra {

PhasePairCorrelations::PhasePairCorrelations(int K, int L, std::vector<CMatrix> blocks)
    : K_(K), L_(L), blocks_(std::move(blocks)) {
  require(L >= 2, "phase-pair correlations need L >= 2");
  require(blocks_.size() == static_cast<std::size_t>(L) * (L - 1) / 2, "expected L(L-1)/2 blocks");
}

std::size_t PhasePairCorrelations::slot(int l, int lp) const {
  // Pairs before row l: sum_{i<l} (L-1-i).
  return static_cast<std::size_t>(l * (2 * L_ - l - 1) / 2 + (lp - l - 1));
}

PhasePairCorrelations cross_correlations(const CorrelationBlock& B) {
  if (B.L < 2) {
    throw InvalidParameter("cross-phase correlation needs L >= 2; use detect_single_phase for L = 1");
  }
  std::vector<CMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(B.L) * (B.L - 1) / 2);
  for (int l = 0; l < B.L; ++l) {
    for (int lp = l + 1; lp < B.L; ++lp) blocks.push_back(B.phase(l).adjoint() * B.phase(lp));
  }
  return PhasePairCorrelations(B.K, B.L, std::move(blocks));
}

DetectionResult detect(const PhasePairCorrelations& C, double th, std::int64_t search_cap) {
  require(th > 0.0, "detection threshold must be > 0");
  const int K = C.K();
  const int L = C.L();
  std::int64_t space = 1;
  for (int l = 0; l < L; ++l) {
    if (space > search_cap / K) {
      throw ResourceLimit("tuple search space K^L exceeds cap " + std::to_string(search_cap));
    }
    space *= K;
  }

  // pass[p](a, b): pair test for phases of slot p.
  std::vector<Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>> pass;
  pass.reserve(C.size());
  for (int l = 0; l < L; ++l) {
    for (int lp = l + 1; lp < L; ++lp) pass.push_back(C.at(l, lp).cwiseAbs().array() > th);
  }
  auto ok = [&](int l, int lp, int a, int b) {
    return pass[static_cast<std::size_t>(l * (2 * L - l - 1) / 2 + (lp - l - 1))](a, b);
  };

  std::vector<int> tuple(L, 0);
  std::vector<int> hits;
  int depth = 0;
  // Depth-first walk; tuple[0..depth) is a prefix that passes every pair test.
  while (depth >= 0) {
    if (tuple[depth] == K) {
      tuple[depth] = 0;
      --depth;
      if (depth >= 0) ++tuple[depth];
      continue;
    }
    bool good = true;
    for (int l = 0; l < depth && good; ++l) good = ok(l, depth, tuple[l], tuple[depth]);
    if (!good) {
      ++tuple[depth];
      continue;
    }
    if (depth + 1 == L) {
      hits.insert(hits.end(), tuple.begin(), tuple.end());
      ++tuple[depth];
    } else {
      ++depth;
    }
  }

  const auto rows = static_cast<Eigen::Index>(hits.size() / L);
  IMatrix idx(rows, L);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (int l = 0; l < L; ++l) idx(r, l) = hits[static_cast<std::size_t>(r * L + l)];
  }
  return {selection_from_indices(idx, K), th};
}

DetectionResult detect_single_phase(const CorrelationBlock& B, double energy_th) {
  if (B.L != 1) throw InvalidParameter("single-phase detection needs L = 1, got L = " + std::to_string(B.L));
  require(energy_th >= 0.0, "energy threshold must be >= 0");
  std::vector<int> hits;
  for (int k = 0; k < B.K; ++k) {
    if (B.B.col(k).norm() > energy_th) hits.push_back(k);
  }
  IMatrix idx(static_cast<Eigen::Index>(hits.size()), 1);
  for (std::size_t i = 0; i < hits.size(); ++i) idx(static_cast<Eigen::Index>(i), 0) = hits[i];
  return {selection_from_indices(idx, B.K), energy_th};
}

}  // namespace mpra
