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

// Signed curvature of projected cap boundaries, and the polynomials in
// c = cos(theta) whose sign changes are the curvature sign changes.
//
// Curvature is taken with respect to the theta parametrization of the chosen
// branch. With c_w = cos(theta_w), s_w = sin(theta_w), s = sin(theta) and
//   A^2 = s^2 s_w^2 - (t - c c_w)^2 = [cos(theta - theta_w) - t][t - cos(theta + theta_w)],
// both region formulas are finite at A = 0 (the branch endpoints).

#ifndef HPXCAP_CURVATURE_HPP_
#define HPXCAP_CURVATURE_HPP_

#include <cmath>
#include <vector>

#include "hpxcap/errors.hpp"
#include "hpxcap/geometry.hpp"
#include "hpxcap/polynomial.hpp"
#include "hpxcap/projection.hpp"

namespace hpxcap {

namespace internal {

inline constexpr double kDomainSlack = 1e-12;

inline bool is_pole_centered(double theta_w) {
  return std::sin(theta_w) < kPoleCenterTolerance;
}

inline bool is_meridian_cap(double theta_w, double t) {
  return std::fabs(std::cos(theta_w)) < 1e-12 && std::fabs(t) < 1e-12;
}

inline void check_theta(double theta, double theta_w, double t) {
  const Interval range = cap_boundary_theta_range(make_cap(0.0, theta_w, t));
  if (!range.contains(theta, kDomainSlack)) {
    throw SingularParameter("theta outside the boundary parametrization domain");
  }
}

inline double a_squared(double c, double s, double cw, double sw, double t) {
  const double d = t - c * cw;
  return std::max(0.0, s * s * sw * sw - d * d);
}

// North-cap curvature for a cap through the north pole (c_w = t), where the
// A-scaled form degenerates; uses phi = phi_w +- arccos(tau tan(theta/2)).
inline double polar_curvature_pole_on_boundary(double theta, double sw, double phi_w, double t,
                                               double b, int facet) {
  static const double kSqrt6 = std::sqrt(6.0);
  const double tau = t / sw;
  const double T = std::tan(0.5 * theta);
  const double g = std::clamp(tau * T, -1.0, 1.0);
  const double g1 = 0.5 * tau * (1.0 + T * T);
  const double g2 = tau * T * 0.5 * (1.0 + T * T);
  const double root = std::sqrt(std::max(1e-300, 1.0 - g * g));
  const double phi = phi_w + b * std::acos(g);
  const double d1 = -b * g1 / root;
  const double d2 = -b * (g2 * (1.0 - g * g) + g * g1 * g1) / (root * root * root);
  const int k = facet >= 0 ? facet : quadrant_of(phi);
  const double u = std::remainder(phi - quadrant_center(k), kTwoPi);
  const double sg = kSqrt6 * std::sin(0.5 * theta);
  const double sg1 = 0.5 * kSqrt6 * std::cos(0.5 * theta);
  const double sg2 = -0.25 * kSqrt6 * std::sin(0.5 * theta);
  const double x1 = (sg1 * u + sg * d1) / kPi;
  const double x2 = (sg2 * u + 2.0 * sg1 * d1 + sg * d2) / kPi;
  const double y1 = -0.25 * sg1;
  const double y2 = -0.25 * sg2;
  return (x1 * y2 - y1 * x2) / std::pow(x1 * x1 + y1 * y1, 1.5);
}

inline double north_curvature(double theta, double theta_w, double phi_w, double t, Branch br,
                              int facet) {
  static const double kSqrt6 = std::sqrt(6.0);
  const double b = branch_sign(br);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double cw = std::cos(theta_w);
  const double sw = std::sin(theta_w);
  if (std::fabs(cw - t) <= kPoleOnBoundaryTolerance) {
    return polar_curvature_pole_on_boundary(theta, sw, phi_w, t, b, facet);
  }
  const double A2 = a_squared(c, s, cw, sw, t);
  const double A = std::sqrt(A2);
  const double e = cw - t * c;
  const double phiA = -b * e / s;
  const double phiA3 = phiA * A2;
  const double phi2A3 = b * ((c - t * cw) * e - (t - cw * c) * A2 / (s * s));
  const double g = std::clamp((t - c * cw) / (s * sw), -1.0, 1.0);
  const double phi = phi_w + b * std::acos(g);
  const int k = facet >= 0 ? facet : quadrant_of(phi);
  const double u = std::remainder(phi - quadrant_center(k), kTwoPi);
  const double y1 = -kSqrt6 / 8.0 * std::cos(0.5 * theta);
  const double y2 = kSqrt6 / 16.0 * std::sin(0.5 * theta);
  const double sigma = kSqrt6 * std::sin(0.5 * theta);
  const double num = (phiA3 * (16.0 * y2 * y2 + 8.0 * y1 * y1) - 16.0 * y2 * y1 * phi2A3) / kPi;
  const double xA = (sigma * phiA - 4.0 * y1 * u * A) / kPi;
  const double yA = y1 * A;
  return num / std::pow(xA * xA + yA * yA, 1.5);
}

}  // namespace internal

// Belt curvature; phi_w does not enter because the belt map is a shift in x.
inline double curvature_equatorial(double theta, double theta_w, double t,
                                   Branch branch = Branch::kPlus) {
  if (internal::is_pole_centered(theta_w) || internal::is_meridian_cap(theta_w, t)) return 0.0;
  internal::check_theta(theta, theta_w, t);
  const double c = std::cos(theta);
  if (std::fabs(c) > kBeltHeight + internal::kDomainSlack) {
    throw SingularParameter("theta outside the belt");
  }
  const double s = std::sin(theta);
  const double cw = std::cos(theta_w);
  const double sw = std::sin(theta_w);
  const double A2 = internal::a_squared(c, s, cw, sw, t);
  const double e = cw - t * c;
  const double N = A2 * 2.0 * cw * c / s + (c - t * cw) * e * s - A2 * t * (1.0 + c * c) / s;
  const double Y = e * e / (kPi * kPi * s * s) + A2 * (9.0 / 64.0) * s * s;
  return branch_sign(branch) * 3.0 * N / (8.0 * kPi * std::pow(Y, 1.5));
}

// Polar curvature, north or south by the sign of cos(theta). `facet` picks
// the quadrant for points on a quadrant meridian; -1 derives it from phi.
inline double curvature_polar(double theta, double theta_w, double phi_w, double t,
                              Branch branch = Branch::kPlus, int facet = -1) {
  if (internal::is_pole_centered(theta_w) || internal::is_meridian_cap(theta_w, t)) return 0.0;
  internal::check_theta(theta, theta_w, t);
  const double c = std::cos(theta);
  if (std::fabs(c) < kBeltHeight - internal::kDomainSlack) {
    throw SingularParameter("theta outside the polar caps");
  }
  if (c > 0) return internal::north_curvature(theta, theta_w, phi_w, t, branch, facet);
  // z -> -z mirrors the south cap onto the north one.
  return internal::north_curvature(kPi - theta, kPi - theta_w, phi_w, t, branch, facet);
}

// Curvature sign polynomials in c; positive multiples of the plus-branch
// curvature on their region.
inline Polynomial belt_sign_polynomial(double cw, double sw, double t) {
  const Polynomial A2{sw * sw - t * t, 2.0 * t * cw, -1.0};
  const Polynomial s2{1.0, 0.0, -1.0};
  const Polynomial f{-t * cw, 1.0};
  const Polynomial e{cw, -t};
  return A2 * Polynomial{0.0, 2.0 * cw} + s2 * f * e - t * (A2 * Polynomial{1.0, 0.0, 1.0});
}

inline Polynomial north_sign_polynomial(double cw, double sw, double t) {
  const Polynomial A2{sw * sw - t * t, 2.0 * t * cw, -1.0};
  const Polynomial s2{1.0, 0.0, -1.0};
  const Polynomial f{-t * cw, 1.0};
  const Polynomial e{cw, -t};
  const Polynomial h{t, -cw};
  return (-1.0) * (Polynomial{3.0, 1.0} * e * A2) + 2.0 * (s2 * f * e) - 2.0 * (A2 * h);
}

struct ZeroCount {
  // Sign changes of curvature in cos(theta), per parametrization branch.
  std::vector<double> belt_roots;
  std::vector<double> north_roots;
  std::vector<double> south_roots;

  int belt() const { return static_cast<int>(belt_roots.size()); }
  int north() const { return static_cast<int>(north_roots.size()); }
  int south() const { return static_cast<int>(south_roots.size()); }
  int per_branch() const { return belt() + north() + south(); }
  // Both branches share their zeros, so the whole boundary has twice as many.
  int total() const { return 2 * per_branch(); }
};

namespace internal {

inline std::vector<double> interior_roots(const Polynomial& p, double lo, double hi) {
  if (!(hi > lo)) return {};
  std::vector<double> out;
  for (double r : sign_change_roots(p, lo, hi)) {
    if (r - lo > 1e-10 && hi - r > 1e-10) out.push_back(r);
  }
  return out;
}

}  // namespace internal

inline ZeroCount curvature_zero_count(const Cap& cap) {
  if (std::fabs(cap.t) >= 1.0) throw DegenerateCap("cap height must lie in (-1, 1)");
  const double tw = cap.theta_w();
  if (internal::is_pole_centered(tw)) throw DegenerateCap("pole-centered cap has zero curvature");
  if (internal::is_meridian_cap(tw, cap.t)) throw DegenerateCap("great circle through both poles");
  const double cw = cap.c_w();
  const double sw = cap.s_w();
  const Interval range = cap_boundary_theta_range(cap);
  const double clo = std::cos(range.hi);
  const double chi = std::cos(range.lo);
  ZeroCount out;
  out.belt_roots = internal::interior_roots(belt_sign_polynomial(cw, sw, cap.t),
                                            std::max(-kBeltHeight, clo), std::min(kBeltHeight, chi));
  out.north_roots = internal::interior_roots(north_sign_polynomial(cw, sw, cap.t),
                                             std::max(kBeltHeight, clo), std::min(1.0, chi));
  for (double r : internal::interior_roots(north_sign_polynomial(-cw, sw, cap.t),
                                           std::max(kBeltHeight, -chi), std::min(1.0, -clo))) {
    out.south_roots.push_back(-r);
  }
  return out;
}

}  // namespace hpxcap

#endif  // HPXCAP_CURVATURE_HPP_
