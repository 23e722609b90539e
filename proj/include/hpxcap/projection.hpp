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

// The projection Gamma of the punctured sphere onto the cylinder
// R = [0, 2) x (-1/2, 1/2), its inverse, and the lattice that carries the
// projected pixel corners.
//
// Within the belt |cos theta| <= 2/3 the map is cylindrical equal-area. In
// each polar quadrant k the map is
//   x = (phi_c + sigma (phi - phi_c)) / pi,   y = +-(2 - sigma) / 4,
// with phi_c = k pi/2 + pi/4 and sigma = sqrt(3 (1 - |cos theta|)), which
// squeezes the quadrant into a triangle with its apex at the pole. Gamma is
// discontinuous across the quadrant meridians inside the polar caps.

#ifndef HPXCAP_PROJECTION_HPP_
#define HPXCAP_PROJECTION_HPP_

#include <cmath>
#include <cstdint>

#include "hpxcap/errors.hpp"
#include "hpxcap/geometry.hpp"

namespace hpxcap {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

inline PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.x + b.x, a.y + b.y}; }
inline PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.x - b.x, a.y - b.y}; }
inline PlanarPoint operator*(double s, PlanarPoint a) { return {s * a.x, s * a.y}; }
inline double planar_dot(PlanarPoint a, PlanarPoint b) { return a.x * b.x + a.y * b.y; }
inline double planar_cross(PlanarPoint a, PlanarPoint b) { return a.x * b.y - a.y * b.x; }
inline double planar_norm(PlanarPoint a) { return std::hypot(a.x, a.y); }

enum class Region { kSouth = -1, kBelt = 0, kNorth = 1 };

inline Region region_of_z(double z) {
  if (z > kBeltHeight) return Region::kNorth;
  if (z < -kBeltHeight) return Region::kSouth;
  return Region::kBelt;
}

// Quadrant floor(2 phi / pi) in {0..3}, snapping values within 1e-14 below
// an integer up to it.
inline int quadrant_of(double phi) {
  const double q = normalize_angle(phi) / kHalfPi;
  int k = static_cast<int>(std::floor(q));
  if (static_cast<double>(k + 1) - q < 1e-14) ++k;
  return ((k % 4) + 4) % 4;
}

inline double quadrant_center(int k) { return k * kHalfPi + 0.25 * kPi; }

// sigma = sqrt(3 (1 - |cos theta|)) in half-angle form, accurate at the poles.
inline double polar_sigma(double theta, Region r) {
  static const double kSqrt6 = std::sqrt(6.0);
  return r == Region::kNorth ? kSqrt6 * std::sin(0.5 * theta) : kSqrt6 * std::cos(0.5 * theta);
}

// Polar branch with an explicit quadrant; used where a point on a quadrant
// meridian must be attributed to a given side.
inline PlanarPoint project_polar(const SphericalAngles& p, Region r, int k) {
  const double sigma = polar_sigma(p.theta, r);
  const double pc = quadrant_center(k);
  double u = normalize_angle(p.phi) - pc;
  u = std::remainder(u, kTwoPi);
  const double y = 0.25 * (2.0 - sigma);
  return {(pc + sigma * u) / kPi, r == Region::kNorth ? y : -y};
}

inline PlanarPoint project(const SphericalAngles& p) {
  if (p.theta <= 0.0 || p.theta >= kPi) {
    throw PoleError("projection is undefined at the poles");
  }
  const double z = std::cos(p.theta);
  const Region r = region_of_z(z);
  if (r == Region::kBelt) return {normalize_angle(p.phi) / kPi, 0.375 * z};
  return project_polar(p, r, quadrant_of(p.phi));
}

inline PlanarPoint project(const UnitVector& v) { return project(to_angles(v)); }

inline double wrap_x(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  if (r >= 2.0) r = 0.0;
  return r;
}

namespace internal {

inline SphericalAngles polar_unproject(double x, double y, int k, double sigma) {
  static const double kSqrt6 = std::sqrt(6.0);
  const double pc = quadrant_center(k);
  const double u = (kPi * x - pc) / sigma;
  const double half = 2.0 * std::asin(std::min(1.0, sigma / kSqrt6));
  return {normalize_angle(pc + u), y > 0 ? half : kPi - half};
}

}  // namespace internal

// Inverse of project. Rows |y| >= 1/2 map to the poles with phi = 0.
inline SphericalAngles unproject(const PlanarPoint& q) {
  const double x = wrap_x(q.x);
  const double ay = std::fabs(q.y);
  if (ay <= 0.25) {
    const double z = q.y * (8.0 / 3.0);
    return {normalize_angle(kPi * x), std::acos(std::clamp(z, -1.0, 1.0))};
  }
  if (ay >= 0.5) return {0.0, q.y > 0 ? 0.0 : kPi};
  const double sigma = 2.0 - 4.0 * ay;
  const int k = std::min(3, static_cast<int>(std::floor(2.0 * x)));
  const double u = (kPi * x - quadrant_center(k)) / sigma;
  if (std::fabs(u) > 0.25 * kPi * (1.0 + 1e-12)) {
    throw OutOfDomain("point lies in an empty corner of the projection rectangle");
  }
  return internal::polar_unproject(x, q.y, k, sigma);
}

// Inverse restricted to polar quadrant k, tolerant of points on the
// quadrant's slanted edges. Belt rows fall back to unproject.
inline SphericalAngles unproject_in_quadrant(const PlanarPoint& q, int k) {
  const double ay = std::fabs(q.y);
  if (ay <= 0.25) return unproject(q);
  if (ay >= 0.5) return {0.0, q.y > 0 ? 0.0 : kPi};
  const double sigma = 2.0 - 4.0 * ay;
  const double center = 0.5 * k + 0.25;
  double x = q.x - 2.0 * std::round((q.x - center) / 2.0);
  const double reach = 0.25 * sigma;
  x = std::clamp(x, center - reach, center + reach);
  return internal::polar_unproject(x, q.y, k, sigma);
}

// 2x2 matrix [[a, b], [c, d]] acting on column vectors.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
  PlanarPoint apply(PlanarPoint p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
  Mat2 inverse() const {
    const double s = 1.0 / det();
    return {d * s, -b * s, -c * s, a * s};
  }
};

// Tiling of the plane by the cells (1/K)(Q p + Q [0,1)^2 + v), p in Z^2.
struct LatticeSpec {
  Mat2 Q;
  PlanarPoint v;
  double K = 1.0;

  // Lattice coordinates Q^{-1}(K P - v); cell p contains P iff floor(.) = p.
  PlanarPoint to_lattice(PlanarPoint P) const {
    return Q.inverse().apply({K * P.x - v.x, K * P.y - v.y});
  }
  PlanarPoint from_lattice(PlanarPoint m) const {
    const PlanarPoint q = Q.apply(m);
    return {(q.x + v.x) / K, (q.y + v.y) / K};
  }
};

// Every projected level-ell pixel is exactly one cell of this lattice.
inline LatticeSpec pixel_lattice(int ell) {
  const double K = std::ldexp(1.0, ell + 2);
  return {Mat2{1.0, -1.0, 1.0, 1.0}, PlanarPoint{0.0, -0.25 * K}, K};
}

// Rotated unit coordinates of the base-pixel lattice,
//   A = 2 (x + y) + 1/2,  B = 2 (y - x) + 1/2;
// each base pixel is one unit cell of (A, B).
inline PlanarPoint to_rotated(PlanarPoint p) {
  return {2.0 * (p.x + p.y) + 0.5, 2.0 * (p.y - p.x) + 0.5};
}

inline PlanarPoint from_rotated(PlanarPoint ab) {
  return {0.25 * (ab.x - ab.y), 0.25 * (ab.x + ab.y - 1.0)};
}

}  // namespace hpxcap

#endif  // HPXCAP_PROJECTION_HPP_
