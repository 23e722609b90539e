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

// Points on the unit sphere, spherical caps C(w, t) = {x : <x, w> >= t}, and
// the analytic parametrizations of cap boundaries by polar angle.

#ifndef HPXCAP_GEOMETRY_HPP_
#define HPXCAP_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "hpxcap/errors.hpp"
#include "hpxcap/rng.hpp"

namespace hpxcap {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Height of the belt/polar separation, |cos theta| = 2/3.
inline constexpr double kBeltHeight = 2.0 / 3.0;

// Tolerance for clamping arccos arguments at branch endpoints.
inline constexpr double kArccosTolerance = 1e-12;

// Reduces an angle to [0, 2 pi).
inline double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

struct SphericalAngles {
  double phi = 0.0;    // azimuth in [0, 2 pi)
  double theta = 0.0;  // colatitude in [0, pi]
};

struct UnitVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  constexpr UnitVector operator-() const { return {-x, -y, -z}; }
};

inline constexpr UnitVector kNorthPole{0.0, 0.0, 1.0};
inline constexpr UnitVector kSouthPole{0.0, 0.0, -1.0};

inline double dot(const UnitVector& a, const UnitVector& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline UnitVector cross(const UnitVector& a, const UnitVector& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const UnitVector& a) { return std::sqrt(dot(a, a)); }

// Scales a nonzero vector to unit length. The caller guarantees norm > 0.
inline UnitVector normalize(const UnitVector& a) {
  const double n = norm(a);
  return {a.x / n, a.y / n, a.z / n};
}

inline UnitVector to_cartesian(const SphericalAngles& a) {
  const double st = std::sin(a.theta);
  return {std::cos(a.phi) * st, std::sin(a.phi) * st, std::cos(a.theta)};
}

// Inverse of to_cartesian; phi = 0 at both poles.
inline SphericalAngles to_angles(const UnitVector& v) {
  const double rho = std::hypot(v.x, v.y);
  const double theta = std::atan2(rho, v.z);
  if (rho == 0.0) return {0.0, theta};
  return {normalize_angle(std::atan2(v.y, v.x)), theta};
}

struct Cap {
  UnitVector w;
  double t = 0.0;

  double c_w() const { return w.z; }
  double s_w() const { return std::hypot(w.x, w.y); }
  double theta_w() const { return std::atan2(s_w(), w.z); }
  double phi_w() const { return to_angles(w).phi; }
};

inline Cap make_cap(double phi_w, double theta_w, double t) {
  return {to_cartesian({normalize_angle(phi_w), theta_w}), t};
}

inline double cap_area_fraction(const Cap& c) { return 0.5 * (1.0 - c.t); }

inline bool cap_contains(const Cap& c, const UnitVector& p, bool closed) {
  const double d = dot(p, c.w);
  return closed ? d >= c.t : d > c.t;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double v, double tol = 0.0) const {
    return v >= lo - tol && v <= hi + tol;
  }
};

// Theta-domain shared by both boundary branches.
inline Interval cap_boundary_theta_range(const Cap& c) {
  const double a = std::acos(std::clamp(c.t, -1.0, 1.0));
  const double tw = c.theta_w();
  const double lo = std::fabs(a - tw);
  const double hi = std::min(a + tw, kTwoPi - a - tw);
  return {std::clamp(lo, 0.0, kPi), std::clamp(hi, 0.0, kPi)};
}

enum class Branch { kPlus, kMinus };

inline double branch_sign(Branch b) { return b == Branch::kPlus ? 1.0 : -1.0; }

namespace internal {

inline double checked_acos(double g) {
  if (std::fabs(g) > 1.0 + kArccosTolerance) {
    throw DomainError("arccos argument outside [-1, 1]");
  }
  return std::acos(std::clamp(g, -1.0, 1.0));
}

// Pole-centered caps have sin(theta_w) below this.
inline constexpr double kPoleCenterTolerance = 1e-15;
// |c_w -+ t| below this puts a pole on the boundary.
inline constexpr double kPoleOnBoundaryTolerance = 1e-12;

}  // namespace internal

// Boundary point at polar angle theta on the given branch:
//   phi = phi_w +- arccos((t - cos theta cos theta_w) / (sin theta sin theta_w)).
// Caps through a pole use the tan/cot half-angle forms, which stay finite at
// the pole. For pole-centered caps the boundary is a parallel and the branch
// only selects phi in {0, pi}.
inline SphericalAngles cap_boundary_point(const Cap& c, double theta, Branch b) {
  const Interval range = cap_boundary_theta_range(c);
  if (!range.contains(theta, kArccosTolerance)) {
    throw DomainError("theta outside the cap boundary range");
  }
  theta = std::clamp(theta, range.lo, range.hi);
  const double sb = branch_sign(b);
  const double sw = c.s_w();
  const double cw = c.c_w();
  if (sw < internal::kPoleCenterTolerance) {
    return {b == Branch::kPlus ? 0.0 : kPi, std::acos(std::clamp(c.t / cw, -1.0, 1.0))};
  }
  const double phi_w = c.phi_w();
  const double tau = c.t / sw;
  double g;
  if (std::fabs(cw - c.t) <= internal::kPoleOnBoundaryTolerance) {
    g = tau * std::tan(0.5 * theta);
  } else if (std::fabs(cw + c.t) <= internal::kPoleOnBoundaryTolerance) {
    g = tau / std::tan(0.5 * theta);
  } else {
    g = (c.t - std::cos(theta) * cw) / (std::sin(theta) * sw);
  }
  return {normalize_angle(phi_w + sb * internal::checked_acos(g)), theta};
}

// Point on the boundary circle at circle angle psi:
//   p(psi) = t w + sqrt(1 - t^2) (cos psi e1 + sin psi e2),
// where (e1, e2, w) is right-handed and e1 points toward the north pole
// (or along +x for pole-centered caps).
struct CapFrame {
  UnitVector e1;
  UnitVector e2;
  double radius = 0.0;
};

inline CapFrame cap_frame(const Cap& c) {
  UnitVector e1;
  const double sw = c.s_w();
  if (sw < internal::kPoleCenterTolerance) {
    e1 = {1.0, 0.0, 0.0};
  } else {
    // Projection of the north pole onto the plane orthogonal to w.
    const double cw = c.w.z;
    e1 = normalize({-cw * c.w.x, -cw * c.w.y, 1.0 - cw * cw});
  }
  const UnitVector e2 = cross(c.w, e1);
  return {e1, e2, std::sqrt(std::max(0.0, 1.0 - c.t * c.t))};
}

inline UnitVector cap_circle_point(const Cap& c, const CapFrame& f, double psi) {
  const double cp = std::cos(psi) * f.radius;
  const double sp = std::sin(psi) * f.radius;
  return {c.t * c.w.x + cp * f.e1.x + sp * f.e2.x,
          c.t * c.w.y + cp * f.e1.y + sp * f.e2.y,
          c.t * c.w.z + cp * f.e1.z + sp * f.e2.z};
}

// Reflections that bring a cap to theta_w in [0, pi/2], t in [0, 1) without
// changing the set of boundary points up to the recorded z-flip.
struct ReducedCap {
  Cap cap;
  bool negated = false;    // (w, t) -> (-w, -t): same boundary circle
  bool z_flipped = false;  // z -> -z applied after negation
};

inline ReducedCap reduce_cap(const Cap& c) {
  ReducedCap r{c, false, false};
  if (r.cap.t < 0.0) {
    r.cap = {-r.cap.w, -r.cap.t};
    r.negated = true;
  }
  if (r.cap.w.z < 0.0) {
    r.cap.w.z = -r.cap.w.z;
    r.z_flipped = true;
  }
  return r;
}

// Maps a boundary point of the reduced cap to the original boundary.
inline SphericalAngles unreduce_point(const ReducedCap& r, const SphericalAngles& p) {
  return r.z_flipped ? SphericalAngles{p.phi, kPi - p.theta} : p;
}

inline UnitVector random_unit_vector(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, kTwoPi);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

inline Cap random_cap(Rng& rng) {
  const UnitVector w = random_unit_vector(rng);
  return {w, rng.uniform(-1.0, 1.0)};
}

}  // namespace hpxcap

#endif  // HPXCAP_GEOMETRY_HPP_
