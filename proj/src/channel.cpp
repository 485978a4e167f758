// SPDX-License-Identifier: Apache-2.0

#include "mpra/channel.hpp"

#include <boost/random/uniform_real_distribution.hpp>

#include <cmath>

namespace mpra {

void CorrelatedGeometry::validate() const {
  require(paths >= 1, "path count Q must be >= 1");
  require(spacing > 0.0, "antenna spacing must be > 0");
  require(angle_spread >= 0.0 && angle_spread <= 2.0 * std::numbers::pi, "angle spread must lie in [0, 2pi]");
  require(azimuth_min <= azimuth_max, "azimuth range is empty");
}

ChannelMatrix iid_rayleigh(int M, int N, Rng& rng) {
  require(M >= 1 && N >= 1, "M and N must be >= 1");
  return {complex_gaussian_matrix(M, N, rng, 1.0 / M)};
}

ChannelMatrix correlated_rayleigh(int M, int N, const CorrelatedGeometry& geom, Rng& rng) {
  require(M >= 1 && N >= 1, "M and N must be >= 1");
  geom.validate();
  // boost's uniform_real never returns on an empty interval; a fixed azimuth
  // skips the draw instead.
  const bool fixed_azimuth = geom.azimuth_min == geom.azimuth_max;
  boost::random::uniform_real_distribution<double> azimuth(
      geom.azimuth_min, fixed_azimuth ? geom.azimuth_min + 1.0 : geom.azimuth_max);
  boost::random::uniform_real_distribution<double> offset(-0.5, 0.5);
  const double norm = 1.0 / std::sqrt(static_cast<double>(M));

  const int Q = geom.paths;
  const double amp = norm / std::sqrt(static_cast<double>(Q));

  // h_m = amp * sum_q v_q exp(j step_q m), the steering-vector sum R v
  // evaluated one antenna at a time with all Q path phasors advanced together.
  ChannelMatrix out{CMatrix(M, N)};
  Eigen::ArrayXd step(Q), rot_re(Q), rot_im(Q), re(Q), im(Q), vr(Q), vi(Q);
  for (int n = 0; n < N; ++n) {
    const double center = fixed_azimuth ? geom.azimuth_min : azimuth(rng);
    for (int q = 0; q < Q; ++q) {
      const double phi = center + geom.angle_spread * offset(rng);
      const Complex v = complex_gaussian(rng);
      step(q) = -2.0 * std::numbers::pi * geom.spacing * std::cos(phi);
      vr(q) = v.real();
      vi(q) = v.imag();
    }
    rot_re = step.cos();
    rot_im = step.sin();
    for (int m = 0; m < M; ++m) {
      if (m % 64 == 0) {
        re = (step * m).cos();
        im = (step * m).sin();
      }
      out.H(m, n) = Complex(amp * (re * vr - im * vi).sum(), amp * (re * vi + im * vr).sum());
      const Eigen::ArrayXd next_re = re * rot_re - im * rot_im;
      im = re * rot_im + im * rot_re;
      re = next_re;
    }
  }
  return out;
}

}  // namespace mpra
