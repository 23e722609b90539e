// Copyright 2026 The hpxcap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent oracles shared by the unit tests and the acceptance run.

#ifndef HPXCAP_TESTS_SUPPORT_HPP_
#define HPXCAP_TESTS_SUPPORT_HPP_

#include <cmath>
#include <optional>

#include "hpxcap/hpxcap.hpp"

namespace hpxcap::testing {

// Projected boundary point on one branch, kept on one chart so the stencil
// never straddles a branch switch.
inline PlanarPoint chart_point(const Cap& c, double theta, Branch b, Region reg, int k) {
  const SphericalAngles a = cap_boundary_point(c, theta, b);
  if (reg == Region::kBelt) return {a.phi / kPi, 0.375 * std::cos(a.theta)};
  return project_polar(a, reg, k);
}

struct CurvatureSample {
  double analytic;
  double finite_difference;
};

// Five-point finite-difference curvature in theta against the closed form,
// or nothing when the sample falls in a guard band: the outer 15% of the theta
// range (square-root endpoints), within 0.02 of |z| = 2/3, of a quadrant
// meridian in the polar caps, or of the x = 0 seam in the belt.
inline std::optional<CurvatureSample> theta_curvature_sample(const Cap& c, double frac, Branch b) {
  const Interval r = cap_boundary_theta_range(c);
  if (!(r.hi - r.lo > 1e-6)) return std::nullopt;
  const double th = r.lo + (0.15 + 0.7 * frac) * (r.hi - r.lo);
  const double z = std::cos(th);
  if (std::fabs(std::fabs(z) - kBeltHeight) < 0.02) return std::nullopt;
  const Region reg = region_of_z(z);
  const SphericalAngles a = cap_boundary_point(c, th, b);
  const int k = quadrant_of(a.phi);
  const double u = std::remainder(a.phi - quadrant_center(k), kTwoPi);
  if (reg != Region::kBelt && std::fabs(u) > 0.25 * kPi - 0.02) return std::nullopt;
  if (reg == Region::kBelt && std::fabs(std::remainder(a.phi, kTwoPi)) < 0.02) return std::nullopt;
  // Large enough that round-off in the second difference stays below 1e-8.
  const double h = 2e-3 * (r.hi - r.lo);
  const PlanarPoint m2 = chart_point(c, th - 2 * h, b, reg, k);
  const PlanarPoint m1 = chart_point(c, th - h, b, reg, k);
  const PlanarPoint p0 = chart_point(c, th, b, reg, k);
  const PlanarPoint p1 = chart_point(c, th + h, b, reg, k);
  const PlanarPoint p2 = chart_point(c, th + 2 * h, b, reg, k);
  const PlanarPoint d1 = (1.0 / (12.0 * h)) * (m2 - 8.0 * m1 + 8.0 * p1 - p2);
  const PlanarPoint d2 = (1.0 / (12.0 * h * h)) * ((-1.0) * m2 + 16.0 * m1 - 30.0 * p0 + 16.0 * p1 - p2);
  const double fd = planar_cross(d1, d2) / std::pow(planar_norm(d1), 3);
  const double an = reg == Region::kBelt ? curvature_equatorial(th, c.theta_w(), c.t, b)
                                         : curvature_polar(th, c.theta_w(), c.phi_w(), c.t, b, k);
  return CurvatureSample{an, fd};
}

inline double relative_error(double a, double b) {
  return std::fabs(a - b) / std::max(1.0, std::fabs(a));
}

}  // namespace hpxcap::testing

#endif  // HPXCAP_TESTS_SUPPORT_HPP_
