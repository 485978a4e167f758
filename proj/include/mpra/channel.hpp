// SPDX-License-Identifier: Apache-2.0
//
// Uplink channel models: i.i.d. Rayleigh and spatially correlated Rayleigh
// over a uniform linear array.

#pragma once

#include "mpra/common.hpp"

#include <numbers>

namespace mpra {

/// M x N channel, column n is UE n's response. Both models normalize
/// E||h_n||^2 to 1.
struct ChannelMatrix {
  CMatrix H;

  int M() const { return static_cast<int>(H.rows()); }
  int N() const { return static_cast<int>(H.cols()); }
};

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Angles are radians here; the configuration layer takes degrees.
struct CorrelatedGeometry {
  int paths = 50;                            ///< Q
  double spacing = 0.5;                      ///< antenna spacing in wavelengths
  double angle_spread = deg_to_rad(40.0);    ///< AOAs uniform in azimuth +/- spread/2
  double azimuth_min = -std::numbers::pi;    ///< UE azimuth drawn uniformly from
  double azimuth_max = std::numbers::pi;     ///< [azimuth_min, azimuth_max)

  void validate() const;
};

/// Entries i.i.d. CN(0, 1/M).
ChannelMatrix iid_rayleigh(int M, int N, Rng& rng);

/// ULA response to a plane wave at angle `phi`: entry m is
/// exp(-j 2 pi spacing m cos(phi)) / sqrt(Q), so ||r||^2 = M / Q.
template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> steering_vector(int M, int Q, Real spacing, Real phi) {
  require(M >= 1 && Q >= 1, "steering_vector needs M >= 1 and Q >= 1");
  using C = std::complex<Real>;
  const Real amp = Real(1) / std::sqrt(static_cast<Real>(Q));
  const Real step = Real(-2) * std::numbers::pi_v<Real> * spacing * std::cos(phi);
  Eigen::Matrix<C, Eigen::Dynamic, 1> r(M);
  // Phasor recurrence in real arithmetic, re-anchored every 64 entries.
  const Real c = std::cos(step);
  const Real s = std::sin(step);
  Real re = amp;
  Real im = Real(0);
  for (int m = 0; m < M; ++m) {
    if (m % 64 == 0) {
      re = amp * std::cos(step * static_cast<Real>(m));
      im = amp * std::sin(step * static_cast<Real>(m));
    }
    r(m) = C(re, im);
    const Real next_re = re * c - im * s;
    im = re * s + im * c;
    re = next_re;
  }
  return r;
}

/// h = R v / sqrt(M), R = [r(phi_1) .. r(phi_Q)], v ~ CN(0, I_Q); every UE
/// draws its own azimuth and its own path angles.
ChannelMatrix correlated_rayleigh(int M, int N, const CorrelatedGeometry& geom, Rng& rng);

}  // namespace mpra
