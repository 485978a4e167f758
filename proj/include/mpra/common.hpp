// SPDX-License-Identifier: Apache-2.0
//
// Shared numeric types, error types and random-stream helpers.

#pragma once

#include <Eigen/Dense>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace mpra {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using IMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Engine used for every random draw in the library.
using Rng = boost::random::mt19937_64;

/// A parameter or dimension is outside the operation's domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An instance would exceed a configured size or work cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Engine for trial `index` of an experiment seeded with `seed`. Streams for
/// distinct (seed, index) pairs are independent of each other and of the
/// order in which trials execute.
inline Rng trial_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

/// Standard normal draws (ziggurat).
using StandardNormal = boost::random::normal_distribution<double>;

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
template <typename Engine>
Complex complex_gaussian(Engine& rng, double variance = 1.0) {
  StandardNormal g;
  const double s = std::sqrt(variance / 2.0);
  const double re = g(rng);
  const double im = g(rng);
  return {s * re, s * im};
}

/// M x N matrix of i.i.d. CN(0, variance) entries, filled column-major.
template <typename Engine>
CMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Engine& rng,
                                double variance = 1.0) {
  CMatrix out(rows, cols);
  StandardNormal g;
  const double s = std::sqrt(variance / 2.0);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      out(i, j) = Complex(s * re, s * im);
    }
  }
  return out;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

}  // namespace mpra
