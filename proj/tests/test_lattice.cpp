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

#include "hpxcap/decomposition.hpp"
#include "hpxcap/lattice.hpp"
#include "hpxcap/pixel_count.hpp"

namespace hpxcap {
namespace {

constexpr TouchConvention kAll[] = {TouchConvention::kOpen, TouchConvention::kPartition,
                                    TouchConvention::kClosed};

LatticeSpec unit_lattice(double K = 1.0, PlanarPoint v = {0.0, 0.0}) { return {Mat2{}, v, K}; }

TEST(Lattice, HorizontalSegmentCrossesOneLine) {
  const PlanarCurve c = PlanarCurve::segment({0.5, 0.5}, {1.5, 0.5});
  for (TouchConvention conv : kAll) EXPECT_EQ(lattice_intersection_count(c, unit_lattice(), conv), 2);
}

TEST(Lattice, DiagonalSharpnessPair) {
  const double eps = 1e-3;
  const PlanarCurve diag = PlanarCurve::segment({0.0, 0.0}, {1.0, 1.0});
  const PlanarCurve moved = PlanarCurve::segment({eps, 0.0}, {1.0 + eps, 1.0});
  EXPECT_EQ(lattice_intersection_count(diag, unit_lattice(), TouchConvention::kOpen), 1);
  EXPECT_EQ(lattice_intersection_count(moved, unit_lattice(), TouchConvention::kOpen), 2);
  // Partition adds the cell owning the far end; closed adds every cell at both ends.
  EXPECT_EQ(lattice_intersection_count(diag, unit_lattice(), TouchConvention::kPartition), 2);
  EXPECT_EQ(lattice_intersection_count(diag, unit_lattice(), TouchConvention::kClosed), 7);
}

TEST(Lattice, ConventionsAreNested) {
  Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    const PlanarPoint a{4 * rng.uniform(), 4 * rng.uniform()};
    const PlanarPoint b{4 * rng.uniform(), 4 * rng.uniform()};
    const PlanarCurve c = PlanarCurve::segment(a, b);
    const LatticeSpec lat = unit_lattice(1.0 + 3 * rng.uniform(), {rng.uniform(), rng.uniform()});
    const int64_t o = lattice_intersection_count(c, lat, TouchConvention::kOpen);
    const int64_t p = lattice_intersection_count(c, lat, TouchConvention::kPartition);
    const int64_t k = lattice_intersection_count(c, lat, TouchConvention::kClosed);
    EXPECT_LE(o, p);
    EXPECT_LE(p, k);
    EXPECT_GE(o, 1);
  }
}

TEST(Lattice, SegmentCountMatchesLineCrossings) {
  // A generic segment enters one new cell per grid line it crosses.
  Rng rng(52);
  for (int i = 0; i < 500; ++i) {
    const PlanarPoint a{10 * rng.uniform(), 10 * rng.uniform()};
    const PlanarPoint b{10 * rng.uniform(), 10 * rng.uniform()};
    const int64_t lines = std::llabs(static_cast<int64_t>(std::floor(a.x)) -
                                     static_cast<int64_t>(std::floor(b.x))) +
                          std::llabs(static_cast<int64_t>(std::floor(a.y)) -
                                     static_cast<int64_t>(std::floor(b.y)));
    EXPECT_EQ(lattice_intersection_count(PlanarCurve::segment(a, b), unit_lattice(),
                                         TouchConvention::kPartition),
              lines + 1);
  }
}

TEST(Lattice, LengthBoundHoldsForSegmentsAndCircles) {
  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    const bool circle = i % 2 == 1;
    const PlanarCurve c =
        circle ? PlanarCurve::arc({rng.uniform(), rng.uniform()}, 0.05 + rng.uniform(), 0.0, kTwoPi)
               : PlanarCurve::segment({rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()});
    const ConvexDecomposition d = decompose_curve(c);
    const Mat2 Q{1.0, -1.0, 1.0, 1.0};
    const double len = polyline_length(c, Q.inverse());
    for (double K = 1; K <= 64; K *= 2) {
      for (int j = 0; j < 3; ++j) {
        const LatticeSpec lat{Q, {rng.uniform(), rng.uniform()}, K};
        const int64_t count = lattice_intersection_count(c, lat, TouchConvention::kPartition);
        EXPECT_LE(count, std::sqrt(2.0) * K * len + 19 * d.n - d.self_intersections + 1);
      }
    }
  }
}

TEST(PixelCount, EquatorCountsPerConvention) {
  for (int ell = 0; ell <= 3; ++ell) {
    const Cap eq{kNorthPole, 0.0};
    const int64_t L = level_side(ell);
    const int64_t expect[] = {4 * L, 8 * L, 12 * L};
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(cap_pixel_intersection_count(eq, ell, {kAll[k]}), expect[k]) << ell;
      EXPECT_EQ(static_cast<int64_t>(planar_cap_pixels(eq, ell, kAll[k]).size()), expect[k]) << ell;
    }
    EXPECT_EQ(expect[1], int64_t{1} << (3 + ell));
  }
}

TEST(PixelCount, TinyCapMeetsOnePixel) {
  for (int ell : {0, 2, 4}) {
    const PixelIndex idx = pixel_from_ordinal(num_pixels(ell) / 3, ell);
    const SphericalAngles c = pixel_center(idx);
    const Cap cap = make_cap(c.phi, c.theta, std::cos(1e-4));
    for (TouchConvention conv : kAll) {
      const auto pix = cap_boundary_pixels(cap, ell, {conv});
      ASSERT_EQ(pix.size(), 1u);
      EXPECT_EQ(pix[0], pixel_ordinal(idx));
    }
  }
}

TEST(PixelCount, SphereAndPlaneAgree) {
  Rng rng(54);
  for (int i = 0; i < 150; ++i) {
    const Cap cap = random_cap(rng);
    const int ell = 1 + i % 3;
    for (TouchConvention conv : kAll) {
      EXPECT_EQ(cap_boundary_pixels(cap, ell, {conv}), planar_cap_pixels(cap, ell, conv))
          << "cap " << i << " level " << ell << " convention " << static_cast<int>(conv);
    }
  }
}

TEST(PixelCount, RefinementIsMonotone) {
  Rng rng(55);
  for (int i = 0; i < 30; ++i) {
    const Cap cap = random_cap(rng);
    int64_t prev = 0;
    for (int depth : {0, 5, 10, 20, 40}) {
      const int64_t n = cap_pixel_intersection_count(cap, 3, {TouchConvention::kOpen, depth});
      EXPECT_GE(n, prev);
      prev = n;
    }
    EXPECT_EQ(prev, cap_pixel_intersection_count(cap, 3, {TouchConvention::kOpen, 30}));
  }
}

TEST(PixelCount, DegenerateCapsThrow) {
  EXPECT_THROW(cap_pixel_intersection_count({kNorthPole, 1.0}, 2), DegenerateCap);
  EXPECT_THROW(cap_pixel_intersection_count({kNorthPole, -1.5}, 2), DegenerateCap);
}

}  // namespace
}  // namespace hpxcap
