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

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "hpxcap/projection.hpp"
#include "hpxcap/tessellation.hpp"

namespace hpxcap {
namespace {

constexpr double kTol = 1e-12;

double ang_diff(double a, double b) { return std::fabs(std::remainder(a - b, kTwoPi)); }

TEST(Levels, PixelCounts) {
  EXPECT_EQ(num_pixels(0), 12);
  EXPECT_EQ(num_pixels(1), 48);
  EXPECT_EQ(num_pixels(3), 768);
  EXPECT_EQ(level_side(5), 32);
  EXPECT_THROW(num_pixels(-1), InvalidIndex);
  EXPECT_THROW(num_pixels(16), LevelOverflow);
}

TEST(Indices, OrdinalRoundTrip) {
  for (int ell = 0; ell <= 4; ++ell) {
    for (int64_t i = 0; i < num_pixels(ell); ++i) {
      const PixelIndex p = pixel_from_ordinal(i, ell);
      EXPECT_NO_THROW(validate(p));
      EXPECT_EQ(pixel_ordinal(p), i);
    }
  }
  EXPECT_THROW(validate({2, 0, 0, 1, 1}), InvalidIndex);
  EXPECT_THROW(validate({0, 0, 1, 3, 1}), InvalidIndex);
  EXPECT_THROW(pixel_from_ordinal(12, 0), InvalidIndex);
}

TEST(Centers, ClosedFormValues) {
  const SphericalAngles a = pixel_center({1, 0, 0, 1, 1});
  EXPECT_NEAR(a.phi, 0.25 * kPi, kTol);
  EXPECT_NEAR(std::cos(a.theta), 2.0 / 3.0, kTol);
  const SphericalAngles b = pixel_center({0, 0, 0, 1, 1});
  EXPECT_NEAR(ang_diff(b.phi, 0.0), 0.0, kTol);
  EXPECT_NEAR(std::cos(b.theta), 0.0, kTol);
  const SphericalAngles c = pixel_center({1, 0, 1, 2, 2});
  EXPECT_NEAR(c.phi, 0.25 * kPi, kTol);
  EXPECT_NEAR(std::cos(c.theta), 1.0 / 3.0, kTol);
}

TEST(Centers, BaseLevelEnumeration) {
  std::map<long, std::vector<double>> rings;  // 3 z -> azimuths
  for (const SphericalAngles& a : healpix_points(0)) {
    rings[std::lround(3.0 * std::cos(a.theta))].push_back(a.phi);
  }
  ASSERT_EQ(rings.size(), 3u);
  for (auto& [z3, phis] : rings) {
    ASSERT_EQ(phis.size(), 4u);
    const double offset = z3 == 0 ? 0.0 : 0.25 * kPi;
    for (double phi : phis) {
      const double q = (phi - offset) / kHalfPi;
      EXPECT_NEAR(q, std::round(q), 1e-12);
    }
  }
  EXPECT_EQ(rings.count(2), 1u);
  EXPECT_EQ(rings.count(-2), 1u);
}

// Pixel centres are the images of the projected cell centres, an oracle that
// shares no arithmetic with the closed-form centre formulas.
TEST(Centers, AgreeWithUnprojectedCellCentres) {
  for (int ell = 0; ell <= 5; ++ell) {
    const double L = static_cast<double>(level_side(ell));
    for (int64_t i = 0; i < num_pixels(ell); ++i) {
      const PixelIndex idx = pixel_from_ordinal(i, ell);
      const LocalCell cell = local_cell(idx);
      const SphericalAngles want = facet_unproject(
          idx.s, idx.k, facet_point(idx.s, idx.k, (cell.p + 0.5) / L, (cell.q + 0.5) / L));
      const SphericalAngles got = pixel_center(idx);
      EXPECT_NEAR(std::cos(got.theta), std::cos(want.theta), 1e-12) << to_string(idx);
      EXPECT_NEAR(ang_diff(got.phi, want.phi), 0.0, 1e-12) << to_string(idx);
    }
  }
}

TEST(Centers, DistinctAndEquatorRing) {
  for (int ell = 0; ell <= 4; ++ell) {
    std::set<std::pair<long long, long long>> seen;
    int equator = 0;
    for (const SphericalAngles& a : healpix_points(ell)) {
      const UnitVector v = to_cartesian(a);
      seen.insert({std::llround(v.x * 1e9) * 4000000000LL + std::llround(v.y * 1e9),
                   std::llround(v.z * 1e9)});
      if (std::fabs(v.z) < 1e-12) ++equator;
    }
    const int64_t n = num_pixels(ell);
    EXPECT_EQ(static_cast<int64_t>(seen.size()), n);
    EXPECT_EQ(equator, std::lround(std::sqrt(4.0 * n / 3.0)));
  }
}

TEST(Location, CentreRoundTrip) {
  for (int ell = 0; ell <= 6; ++ell) {
    for (int64_t i = 0; i < num_pixels(ell); ++i) {
      const PixelIndex idx = pixel_from_ordinal(i, ell);
      ASSERT_EQ(point_to_pixel(pixel_center(idx), ell), idx);
    }
  }
}

TEST(Location, PolesAreStable) {
  for (int ell = 0; ell <= 8; ++ell) {
    EXPECT_EQ(point_to_pixel(kNorthPole, ell), (PixelIndex{1, 0, ell, 1, 1}));
    EXPECT_EQ(point_to_pixel(kSouthPole, ell), (PixelIndex{-1, 0, ell, 1, 1}));
  }
}

TEST(Location, EqualAreaHitCounts) {
  constexpr int kEll = 1;
  constexpr int kSamples = 480000;
  const int64_t n = num_pixels(kEll);
  std::vector<int64_t> hits(static_cast<size_t>(n), 0);
  Rng rng(99);
  for (int i = 0; i < kSamples; ++i) ++hits[pixel_ordinal(point_to_pixel(random_unit_vector(rng), kEll))];
  const double expect = static_cast<double>(kSamples) / n;
  double chi2 = 0.0;
  for (int64_t h : hits) chi2 += (h - expect) * (h - expect) / expect;
  EXPECT_GT(boost::math::gamma_q(0.5 * (n - 1), 0.5 * chi2), 1e-3);
}

TEST(Vertices, BaseEquatorialPixel) {
  const auto v = pixel_vertices({0, 0, 0, 1, 1});
  EXPECT_NEAR(std::cos(v[0].theta), 2.0 / 3.0, kTol);
  EXPECT_NEAR(ang_diff(v[0].phi, 0.0), 0.0, kTol);
  EXPECT_NEAR(std::cos(v[2].theta), -2.0 / 3.0, kTol);
  EXPECT_NEAR(ang_diff(v[2].phi, 0.0), 0.0, kTol);
  EXPECT_NEAR(std::cos(v[1].theta), 0.0, kTol);
  EXPECT_NEAR(std::cos(v[3].theta), 0.0, kTol);
  std::set<long> side{std::lround(4.0 * std::remainder(v[1].phi, kTwoPi) / kPi),
                      std::lround(4.0 * std::remainder(v[3].phi, kTwoPi) / kPi)};
  EXPECT_EQ(side, (std::set<long>{-1, 1}));
}

TEST(Vertices, PolarApexIsThePole) {
  const auto v = pixel_vertices({1, 0, 0, 1, 1});
  EXPECT_NEAR(v[0].theta, 0.0, kTol);
}

TEST(Topology, EulerCharacteristicAndSharing) {
  for (int ell = 0; ell <= 3; ++ell) {
    const PixelTopology topo(ell);
    const int64_t n = num_pixels(ell);
    // V - E + F = 2 with E = 2F for a quadrilateral tiling of the sphere.
    EXPECT_EQ(static_cast<int64_t>(topo.num_vertices()), n + 2);
    size_t incidences = 0;
    for (size_t v = 0; v < topo.num_vertices(); ++v) incidences += topo.pixels_at(static_cast<int>(v)).size();
    EXPECT_EQ(static_cast<int64_t>(incidences), 4 * n);
    int64_t adjacent_pairs = 0;
    for (int64_t a = 0; a < n; ++a) {
      for (int64_t b = a + 1; b < n; ++b) adjacent_pairs += topo.edge_adjacent(a, b);
    }
    EXPECT_EQ(adjacent_pairs, 2 * n);
  }
}

TEST(Boundary, EquatorialLineEndpoints) {
  BoundaryCurve m;
  m.kind = BoundaryKind::kEquatorialM;
  m.j = 0;
  m.ell = 0;
  EXPECT_NEAR(m.cos_theta(0.0), 2.0 / 3.0, kTol);
  EXPECT_NEAR(m.cos_theta(kHalfPi), -2.0 / 3.0, kTol);
}

TEST(Boundary, PolarCurveAtLeftEnd) {
  for (int ell = 1; ell <= 3; ++ell) {
    const int L = 1 << ell;
    for (int j = 1; j < L; ++j) {
      BoundaryCurve m;
      m.kind = BoundaryKind::kPolarM;
      m.j = j;
      m.k = 2;
      m.ell = ell;
      m.hemisphere = 1;
      EXPECT_NEAR(m.cos_theta(2 * kHalfPi), 1.0 - j * j / (3.0 * L * L), kTol);
    }
  }
}

// Every sampled point of a pixel side projects onto one lattice line.
TEST(Boundary, SidesProjectOntoLatticeLines) {
  for (int ell = 0; ell <= 3; ++ell) {
    const LatticeSpec lat = pixel_lattice(ell);
    for (int64_t i = 0; i < num_pixels(ell); ++i) {
      const PixelIndex idx = pixel_from_ordinal(i, ell);
      for (const BoundaryCurve& side : pixel_boundary(idx)) {
        EXPECT_TRUE(side.domain.lo <= side.domain.hi);
        for (double u : {0.1, 0.5, 0.9}) {
          const SphericalAngles a = side.sample(u);
          const Region reg = region_of_z(std::cos(a.theta));
          // Meridian sides belong to the facet being walked.
          const PlanarPoint P = reg == Region::kBelt ? project(a) : project_polar(a, reg, idx.k);
          const PlanarPoint m = lat.to_lattice(P);
          const double da = std::fabs(m.x - std::round(m.x));
          const double db = std::fabs(m.y - std::round(m.y));
          EXPECT_LT(std::min(da, db), 1e-9) << to_string(idx) << " u=" << u;
          if (side.kind != BoundaryKind::kMeridian) {
            EXPECT_TRUE(side.domain.contains(a.phi, 1e-9) ||
                        side.domain.contains(a.phi + kTwoPi, 1e-9) ||
                        side.domain.contains(a.phi - kTwoPi, 1e-9))
                << to_string(idx);
          }
        }
      }
    }
  }
}

TEST(AreaPreservation, SubpixelQuarter) {
  const PixelIndex base{1, 2, 0, 1, 1};
  const PixelIndex child{1, 2, 1, 1, 2};
  const AreaRatio r = area_ratio(
      [&](const UnitVector& v) { return point_to_pixel(v, 1) == child; }, base, 400000, 4);
  EXPECT_NEAR(r.sphere, 0.25, 4 * r.sphere_stderr + 1e-9);
  EXPECT_NEAR(r.planar, 0.25, 4 * r.planar_stderr + 1e-9);
}

TEST(AreaPreservation, WholeBaseAndRandomCap) {
  const PixelIndex base{0, 1, 0, 1, 1};
  const AreaRatio all = area_ratio([](const UnitVector&) { return true; }, base, 10000, 1);
  EXPECT_EQ(all.difference(), 0.0);
  Rng rng(17);
  for (int i = 0; i < 5; ++i) {
    const Cap c = random_cap(rng);
    const AreaRatio r = area_ratio([&](const UnitVector& v) { return cap_contains(c, v, true); },
                                   base, 400000, 10 + i);
    const double se = std::hypot(r.sphere_stderr, r.planar_stderr);
    EXPECT_LT(std::fabs(r.difference()), 4 * se + 1e-9);
  }
}

}  // namespace
}  // namespace hpxcap
