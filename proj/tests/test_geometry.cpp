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

#include <gtest/gtest.h>

#include <cmath>

#include "hpxcap/geometry.hpp"
#include "hpxcap/rng.hpp"

namespace hpxcap {
namespace {

constexpr double kTol = 1e-12;

TEST(Angles, AxisPointsToCartesian) {
  const UnitVector x = to_cartesian({0.0, kHalfPi});
  EXPECT_NEAR(x.x, 1.0, kTol);
  EXPECT_NEAR(x.y, 0.0, kTol);
  EXPECT_NEAR(x.z, 0.0, kTol);
  const UnitVector y = to_cartesian({kHalfPi, kHalfPi});
  EXPECT_NEAR(y.y, 1.0, kTol);
  const UnitVector n = to_cartesian({1.3, 0.0});
  EXPECT_NEAR(n.x, 0.0, kTol);
  EXPECT_NEAR(n.y, 0.0, kTol);
  EXPECT_NEAR(n.z, 1.0, kTol);
}

TEST(Angles, PoleAndAxisToAngles) {
  const SphericalAngles n = to_angles(kNorthPole);
  EXPECT_EQ(n.phi, 0.0);
  EXPECT_EQ(n.theta, 0.0);
  const SphericalAngles a = to_angles({0.0, -1.0, 0.0});
  EXPECT_NEAR(a.phi, 1.5 * kPi, kTol);
  EXPECT_NEAR(a.theta, kHalfPi, kTol);
}

TEST(Angles, RandomRoundTrip) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const UnitVector v = random_unit_vector(rng);
    EXPECT_NEAR(norm(v), 1.0, kTol);
    const UnitVector w = to_cartesian(to_angles(v));
    EXPECT_NEAR(w.x, v.x, kTol);
    EXPECT_NEAR(w.y, v.y, kTol);
    EXPECT_NEAR(w.z, v.z, kTol);
  }
}

TEST(Angles, NormalizeIntoHalfOpenRange) {
  EXPECT_EQ(normalize_angle(0.0), 0.0);
  EXPECT_NEAR(normalize_angle(-kHalfPi), 1.5 * kPi, kTol);
  EXPECT_NEAR(normalize_angle(5 * kPi), kPi, 1e-12);
  EXPECT_LT(normalize_angle(std::nextafter(kTwoPi, 0.0)), kTwoPi);
}

TEST(Cap, AreaFraction) {
  EXPECT_EQ(cap_area_fraction({kNorthPole, 1.0}), 0.0);
  EXPECT_EQ(cap_area_fraction({kNorthPole, -1.0}), 1.0);
  EXPECT_EQ(cap_area_fraction({kNorthPole, 0.0}), 0.5);
}

TEST(Cap, ClosedAndOpenMembership) {
  const Cap h{kNorthPole, 0.0};
  EXPECT_TRUE(cap_contains(h, kNorthPole, true));
  EXPECT_TRUE(cap_contains(h, {1.0, 0.0, 0.0}, true));
  EXPECT_FALSE(cap_contains(h, {1.0, 0.0, 0.0}, false));
  EXPECT_FALSE(cap_contains(h, kSouthPole, true));
}

TEST(Cap, BoundaryThetaRange) {
  const Interval pole = cap_boundary_theta_range({kNorthPole, 0.0});
  EXPECT_NEAR(pole.lo, kHalfPi, kTol);
  EXPECT_NEAR(pole.hi, kHalfPi, kTol);
  const Interval meridian = cap_boundary_theta_range(make_cap(0.0, kHalfPi, 0.0));
  EXPECT_NEAR(meridian.lo, 0.0, kTol);
  EXPECT_NEAR(meridian.hi, kPi, kTol);
  const Interval touch = cap_boundary_theta_range(make_cap(0.3, 0.25 * kPi, std::cos(0.25 * kPi)));
  EXPECT_NEAR(touch.lo, 0.0, kTol);
  EXPECT_NEAR(touch.hi, kHalfPi, kTol);
}

TEST(Cap, BoundaryPointGenericCase) {
  const Cap c = make_cap(0.0, kHalfPi, 0.5);
  const SphericalAngles p = cap_boundary_point(c, kHalfPi, Branch::kPlus);
  EXPECT_NEAR(p.phi, kPi / 3.0, kTol);
  const SphericalAngles m = cap_boundary_point(c, kHalfPi, Branch::kMinus);
  EXPECT_NEAR(m.phi, 2.0 * kPi - kPi / 3.0, kTol);
}

TEST(Cap, BoundaryPointThroughNorthPole) {
  const double phi_w = 0.7;
  const double tw = 1.1;
  const Cap c = make_cap(phi_w, tw, std::cos(tw));
  const SphericalAngles p = cap_boundary_point(c, 0.0, Branch::kPlus);
  EXPECT_NEAR(p.phi, phi_w + kHalfPi, kTol);
}

TEST(Cap, BoundaryPointPoleCentered) {
  const Cap c{kNorthPole, 0.5};
  for (Branch b : {Branch::kPlus, Branch::kMinus}) {
    EXPECT_NEAR(cap_boundary_point(c, std::acos(0.5), b).theta, std::acos(0.5), kTol);
  }
}

TEST(Cap, BoundaryPointsLieOnTheCircle) {
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    const Cap c = random_cap(rng);
    const Interval r = cap_boundary_theta_range(c);
    const double th = r.lo + rng.uniform() * (r.hi - r.lo);
    for (Branch b : {Branch::kPlus, Branch::kMinus}) {
      const UnitVector p = to_cartesian(cap_boundary_point(c, th, b));
      EXPECT_NEAR(dot(p, c.w), c.t, 1e-9);
    }
  }
}

TEST(Cap, BoundaryPointRejectsThetaOutsideRange) {
  const Cap c{kNorthPole, 0.5};
  EXPECT_THROW(cap_boundary_point(c, 0.1, Branch::kPlus), DomainError);
}

TEST(Cap, CircleFrameIsOrthonormal) {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const Cap c = random_cap(rng);
    const CapFrame f = cap_frame(c);
    EXPECT_NEAR(norm(f.e1), 1.0, kTol);
    EXPECT_NEAR(norm(f.e2), 1.0, kTol);
    EXPECT_NEAR(dot(f.e1, f.e2), 0.0, kTol);
    EXPECT_NEAR(dot(f.e1, c.w), 0.0, kTol);
    for (double psi : {0.0, 1.0, 4.0}) {
      const UnitVector p = cap_circle_point(c, f, psi);
      EXPECT_NEAR(norm(p), 1.0, kTol);
      EXPECT_NEAR(dot(p, c.w), c.t, kTol);
    }
    // psi = 0 is the northernmost boundary point.
    const double top = cap_circle_point(c, f, 0.0).z;
    EXPECT_GE(top + 1e-12, cap_circle_point(c, f, 0.3).z);
    EXPECT_GE(top + 1e-12, cap_circle_point(c, f, -0.3).z);
  }
}

TEST(Cap, ReductionPreservesTheBoundary) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const Cap c = random_cap(rng);
    const ReducedCap r = reduce_cap(c);
    EXPECT_GE(r.cap.t, 0.0);
    EXPECT_GE(r.cap.w.z, 0.0);
    const Interval range = cap_boundary_theta_range(r.cap);
    const double th = 0.5 * (range.lo + range.hi);
    const UnitVector p = to_cartesian(unreduce_point(r, cap_boundary_point(r.cap, th, Branch::kPlus)));
    EXPECT_NEAR(dot(p, c.w), c.t, 1e-9);
  }
}

TEST(Random, SeededStreamsAreReproducible) {
  Rng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

TEST(Random, UniformSphereMoments) {
  Rng rng(2026);
  constexpr int kN = 1000000;
  double sum_z = 0.0;
  int in_cap = 0;
  const Cap c{kNorthPole, 0.5};
  for (int i = 0; i < kN; ++i) {
    const UnitVector v = random_unit_vector(rng);
    sum_z += v.z;
    in_cap += cap_contains(c, v, true);
  }
  // z is uniform on [-1, 1]: variance 1/3.
  EXPECT_LT(std::fabs(sum_z / kN), 4.0 * std::sqrt(1.0 / 3.0 / kN));
  const double p = 0.25;
  EXPECT_LT(std::fabs(static_cast<double>(in_cap) / kN - p), 4.0 * std::sqrt(p * (1 - p) / kN));
}

}  // namespace
}  // namespace hpxcap
