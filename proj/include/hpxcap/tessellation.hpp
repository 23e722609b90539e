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

// Hierarchical equal-area tessellation of the sphere: pixel addresses
// (s, k, ell, r, c), centers, boundary curves, vertices and point location.
//
// Pixels are located in the projected plane. Base pixel (s, k) is the unit
// cell `facet_origin(s, k)` of the rotated coordinates (A, B) from
// projection.hpp; a level-ell pixel is the cell (p, q) of the L x L
// subdivision, with
//   s = 0, 1:  r = L - q,  c = L - p
//   s = -1:    r = p + 1,  c = q + 1.

#ifndef HPXCAP_TESSELLATION_HPP_
#define HPXCAP_TESSELLATION_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hpxcap/errors.hpp"
#include "hpxcap/geometry.hpp"
#include "hpxcap/projection.hpp"
#include "hpxcap/rng.hpp"

namespace hpxcap {

inline constexpr int kMaxLevel = 15;

inline void check_level(int ell) {
  if (ell < 0) throw InvalidIndex("negative level");
  if (ell > kMaxLevel) throw LevelOverflow("level " + std::to_string(ell) + " exceeds 15");
}

inline int64_t level_side(int ell) {
  check_level(ell);
  return int64_t{1} << ell;
}

inline int64_t num_pixels(int ell) {
  check_level(ell);
  return int64_t{12} << (2 * ell);
}

struct PixelIndex {
  int s = 0;    // -1 south polar, 0 equatorial, 1 north polar
  int k = 0;    // quadrant 0..3
  int ell = 0;  // level
  int r = 1;    // 1..L
  int c = 1;    // 1..L

  friend auto operator<=>(const PixelIndex&, const PixelIndex&) = default;
};

inline std::string to_string(const PixelIndex& p) {
  return "(" + std::to_string(p.s) + "," + std::to_string(p.k) + "," + std::to_string(p.ell) +
         "," + std::to_string(p.r) + "," + std::to_string(p.c) + ")";
}

inline void validate(const PixelIndex& p) {
  check_level(p.ell);
  const int L = 1 << p.ell;
  if (p.s < -1 || p.s > 1 || p.k < 0 || p.k > 3 || p.r < 1 || p.r > L || p.c < 1 || p.c > L) {
    throw InvalidIndex("pixel index out of range " + to_string(p));
  }
}

// Position in the lexicographic (s, k, r, c) enumeration.
inline int64_t pixel_ordinal(const PixelIndex& p) {
  const int64_t L = int64_t{1} << p.ell;
  return ((p.s + 1) * 4 + p.k) * L * L + (p.r - 1) * L + (p.c - 1);
}

inline PixelIndex pixel_from_ordinal(int64_t n, int ell) {
  const int64_t L = level_side(ell);
  if (n < 0 || n >= 12 * L * L) throw InvalidIndex("ordinal out of range");
  const int64_t base = n / (L * L);
  const int64_t rest = n % (L * L);
  return {static_cast<int>(base / 4) - 1, static_cast<int>(base % 4), ell,
          static_cast<int>(rest / L) + 1, static_cast<int>(rest % L) + 1};
}

// Unit cell of the rotated (A, B) coordinates occupied by base pixel (s, k).
struct FacetCell {
  int64_t i = 0;
  int64_t j = 0;
};

inline FacetCell facet_origin(int s, int k) {
  switch (s) {
    case 0: return {k, -k};
    case 1: return {k + 1, -k};
    default: return {k, -k - 1};
  }
}

// Cell of the L x L subdivision of its base pixel.
struct LocalCell {
  int64_t p = 0;
  int64_t q = 0;
};

inline LocalCell local_cell(const PixelIndex& idx) {
  const int64_t L = int64_t{1} << idx.ell;
  if (idx.s >= 0) return {L - idx.c, L - idx.r};
  return {idx.r - 1, idx.c - 1};
}

inline PixelIndex pixel_from_local(int s, int k, int ell, LocalCell cell) {
  const int L = 1 << ell;
  if (s >= 0) {
    return {s, k, ell, L - static_cast<int>(cell.q), L - static_cast<int>(cell.p)};
  }
  return {s, k, ell, static_cast<int>(cell.p) + 1, static_cast<int>(cell.q) + 1};
}

// Planar position of local facet coordinates (a, b) in [0, 1]^2.
inline PlanarPoint facet_point(int s, int k, double a, double b) {
  const FacetCell o = facet_origin(s, k);
  return from_rotated({static_cast<double>(o.i) + a, static_cast<double>(o.j) + b});
}

// Maps a planar point of base pixel (s, k) back to the sphere.
inline SphericalAngles facet_unproject(int s, int k, PlanarPoint q) {
  return s == 0 ? unproject(q) : unproject_in_quadrant(q, k);
}

// Pixel centers in closed form. The s = 0 heights decrease with r + c, and
// the polar azimuth is measured from the quadrant meridian on the side that
// keeps the polar and belt formulas continuous across r + c = L + 1.
inline SphericalAngles pixel_center(const PixelIndex& idx) {
  validate(idx);
  const double L = static_cast<double>(1 << idx.ell);
  const double r = idx.r;
  const double c = idx.c;
  const double m = r + c - 1.0;
  double phi;
  double z;
  if (idx.s == 0) {
    phi = kPi * (r - c) / (4.0 * L) + idx.k * kHalfPi;
    z = 2.0 / 3.0 - 2.0 * m / (3.0 * L);
  } else {
    if (m <= L) {
      phi = idx.k * kHalfPi + kPi * (2.0 * r - 1.0) / (4.0 * m);
      z = 1.0 - m * m / (3.0 * L * L);
    } else {
      phi = kPi * (r - c) / (4.0 * L) + (2 * idx.k + 1) * 0.25 * kPi;
      z = 4.0 / 3.0 - 2.0 * m / (3.0 * L);
    }
    if (idx.s < 0) z = -z;
  }
  return {normalize_angle(phi), std::acos(std::clamp(z, -1.0, 1.0))};
}

// Centers of all N pixels in ordinal order.
inline std::vector<SphericalAngles> healpix_points(int ell) {
  const int64_t n = num_pixels(ell);
  std::vector<SphericalAngles> out;
  out.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) out.push_back(pixel_center(pixel_from_ordinal(i, ell)));
  return out;
}

namespace internal {

inline int64_t floor_mod(int64_t a, int64_t m) { return ((a % m) + m) % m; }

inline int64_t floor_div(int64_t a, int64_t m) { return (a - floor_mod(a, m)) / m; }

inline int64_t clamp_cell(int64_t v, int64_t L) { return std::clamp<int64_t>(v, 0, L - 1); }

inline PixelIndex polar_pixel(const SphericalAngles& p, Region region, int ell) {
  const int64_t L = int64_t{1} << ell;
  const int s = region == Region::kNorth ? 1 : -1;
  const int k = quadrant_of(p.phi);
  const PlanarPoint ab = to_rotated(project_polar(p, region, k));
  const FacetCell o = facet_origin(s, k);
  const double Ld = static_cast<double>(L);
  const int64_t pc = clamp_cell(static_cast<int64_t>(std::floor(Ld * ab.x)) - L * o.i, L);
  const int64_t qc = clamp_cell(static_cast<int64_t>(std::floor(Ld * ab.y)) - L * o.j, L);
  return pixel_from_local(s, k, ell, {pc, qc});
}

}  // namespace internal

// Half-open point location: each point belongs to exactly one pixel.
inline PixelIndex point_to_pixel(const SphericalAngles& p, int ell) {
  check_level(ell);
  if (p.theta <= 0.0) return {1, 0, ell, 1, 1};
  if (p.theta >= kPi) return {-1, 0, ell, 1, 1};
  const double z = std::cos(p.theta);
  const Region region = region_of_z(z);
  if (region != Region::kBelt) return internal::polar_pixel(p, region, ell);

  const int64_t L = int64_t{1} << ell;
  const PlanarPoint ab = to_rotated(project(p));
  const double Ld = static_cast<double>(L);
  const int64_t U = static_cast<int64_t>(std::floor(Ld * ab.x));
  const int64_t V = static_cast<int64_t>(std::floor(Ld * ab.y));
  const int64_t fi = internal::floor_div(U, L);
  const int64_t fj = internal::floor_div(V, L);
  const int64_t sum = fi + fj;
  // Belt points on the z = 2/3 row can land in the cell above a facet vertex.
  if (sum >= 2) return internal::polar_pixel(p, Region::kNorth, ell);
  if (sum <= -2) return internal::polar_pixel(p, Region::kSouth, ell);
  int s;
  int k;
  if (sum == 0) {
    s = 0;
    k = static_cast<int>(internal::floor_mod(fi, 4));
  } else if (sum == 1) {
    s = 1;
    k = static_cast<int>(internal::floor_mod(-fj, 4));
  } else {
    s = -1;
    k = static_cast<int>(internal::floor_mod(fi, 4));
  }
  return pixel_from_local(s, k, ell, {U - L * fi, V - L * fj});
}

inline PixelIndex point_to_pixel(const UnitVector& v, int ell) {
  return point_to_pixel(to_angles(v), ell);
}

// Corners of a pixel in the order north, east, south, west. Corners at a pole
// come back as the pole itself.
inline std::array<SphericalAngles, 4> pixel_vertices(const PixelIndex& idx) {
  validate(idx);
  const double L = static_cast<double>(1 << idx.ell);
  const LocalCell cell = local_cell(idx);
  const double p = static_cast<double>(cell.p);
  const double q = static_cast<double>(cell.q);
  const std::array<std::array<double, 2>, 4> corners{
      {{p + 1, q + 1}, {p + 1, q}, {p, q}, {p, q + 1}}};
  std::array<SphericalAngles, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = facet_unproject(idx.s, idx.k,
                             facet_point(idx.s, idx.k, corners[i][0] / L, corners[i][1] / L));
  }
  return out;
}

enum class BoundaryKind { kEquatorialM, kEquatorialP, kPolarM, kPolarP, kMeridian };

// One side of a pixel as a member of a boundary-curve family.
//   equatorial m_j:  cos theta = 2/3 - (8 / 3pi) (phi - j pi / 2L),  phi in I_j
//   equatorial p_j:  cos theta = -2/3 + (8 / 3pi) (phi - j pi / 2L),  phi in I_j
//   polar m_j:  cos theta = +-(1 - (j^2 / 3L^2) (pi / (2 ((k+1) pi/2 - phi)))^2)
//   polar p_j:  cos theta = +-(1 - (j^2 / 3L^2) (pi / (2 (phi - k pi/2)))^2)
//   meridian:   phi fixed at a quadrant boundary
// with I_j = [j pi/2L, (j + L) pi/2L], E_j = [k pi/2, (k+1) pi/2 - j pi/2L] for
// polar m and A_j = [k pi/2 + j pi/2L, (k+1) pi/2] for polar p. Equatorial
// domains are not reduced modulo 2 pi.
struct BoundaryCurve {
  BoundaryKind kind = BoundaryKind::kEquatorialM;
  int j = 0;
  int k = 0;
  int ell = 0;
  int hemisphere = 0;  // +1 north, -1 south, 0 belt
  Interval domain;     // phi-domain of the whole curve (a point for meridians)
  SphericalAngles from;  // endpoints of the pixel side
  SphericalAngles to;

  double cos_theta(double phi) const {
    const double L = static_cast<double>(1 << ell);
    switch (kind) {
      case BoundaryKind::kEquatorialM:
        return 2.0 / 3.0 - (8.0 / (3.0 * kPi)) * (phi - j * kPi / (2.0 * L));
      case BoundaryKind::kEquatorialP:
        return -2.0 / 3.0 + (8.0 / (3.0 * kPi)) * (phi - j * kPi / (2.0 * L));
      case BoundaryKind::kPolarM: {
        const double f = kPi / (2.0 * ((k + 1) * kHalfPi - phi));
        return hemisphere * (1.0 - (j * j) / (3.0 * L * L) * f * f);
      }
      case BoundaryKind::kPolarP: {
        const double f = kPi / (2.0 * (phi - k * kHalfPi));
        return hemisphere * (1.0 - (j * j) / (3.0 * L * L) * f * f);
      }
      case BoundaryKind::kMeridian:
        break;
    }
    throw DomainError("meridian sides are not graphs over phi");
  }

  // Point at fraction u in [0, 1] along the side, from `from` to `to`.
  SphericalAngles sample(double u) const {
    if (kind == BoundaryKind::kMeridian) {
      return {normalize_angle(domain.lo), from.theta + u * (to.theta - from.theta)};
    }
    const double phi = from.phi + u * (to.phi - from.phi);
    return {normalize_angle(phi), std::acos(std::clamp(cos_theta(phi), -1.0, 1.0))};
  }
};

namespace internal {

// Azimuth of a corner, unwrapped into the facet's own phi range.
inline double facet_phi(int s, int k, PlanarPoint pt) {
  if (s != 0 && std::fabs(pt.y) > 0.25) {
    const double ay = std::fabs(pt.y);
    if (ay >= 0.5) return quadrant_center(k);
    const double sigma = 2.0 - 4.0 * ay;
    const double center = 0.5 * k + 0.25;
    const double x = std::clamp(pt.x, center - 0.25 * sigma, center + 0.25 * sigma);
    return quadrant_center(k) + (kPi * x - quadrant_center(k)) / sigma;
  }
  return kPi * pt.x;
}

inline BoundaryCurve make_side(const PixelIndex& idx, bool a_line, double line, double from_other,
                               double to_other) {
  const int L = 1 << idx.ell;
  const int s = idx.s;
  const int k = idx.k;
  auto corner = [&](double other) {
    return a_line ? facet_point(s, k, line, other) : facet_point(s, k, other, line);
  };
  const PlanarPoint P0 = corner(from_other);
  const PlanarPoint P1 = corner(to_other);
  BoundaryCurve bc;
  bc.k = k;
  bc.ell = idx.ell;
  bc.from = facet_unproject(s, k, P0);
  bc.to = facet_unproject(s, k, P1);
  double phi0 = facet_phi(s, k, P0);
  double phi1 = facet_phi(s, k, P1);
  const double mid_y = 0.5 * (P0.y + P1.y);
  const bool polar = s != 0 && std::fabs(mid_y) > 0.25;
  const int line_index = static_cast<int>(std::lround(line * L));
  if (polar) {
    bc.hemisphere = s;
    // North: a-lines are m_{L - Lα}, b-lines p_{L - Lβ}. South: a-lines are
    // p_{Lα}, b-lines m_{Lβ}. Index 0 is the meridian edge of the base pixel.
    const bool m_family = (s > 0) == a_line;
    bc.j = s > 0 ? L - line_index : line_index;
    if (bc.j == 0) {
      bc.kind = BoundaryKind::kMeridian;
      const double mer = m_family ? (k + 1) * kHalfPi : k * kHalfPi;
      bc.domain = {mer, mer};
      bc.from.phi = bc.to.phi = normalize_angle(mer);
      return bc;
    }
    const double w = bc.j * kPi / (2.0 * L);
    if (m_family) {
      bc.kind = BoundaryKind::kPolarM;
      bc.domain = {k * kHalfPi, (k + 1) * kHalfPi - w};
    } else {
      bc.kind = BoundaryKind::kPolarP;
      bc.domain = {k * kHalfPi + w, (k + 1) * kHalfPi};
    }
  } else {
    const FacetCell o = facet_origin(s, k);
    if (a_line) {
      bc.kind = BoundaryKind::kEquatorialM;
      bc.j = static_cast<int>(floor_mod(L * o.i + line_index - L, 4 * L));
    } else {
      bc.kind = BoundaryKind::kEquatorialP;
      bc.j = static_cast<int>(floor_mod(-(L * o.j + line_index), 4 * L));
    }
    bc.domain = {bc.j * kPi / (2.0 * L), (bc.j + L) * kPi / (2.0 * L)};
    const double shift = kTwoPi * std::floor((std::min(phi0, phi1) - bc.domain.lo) / kTwoPi + 1e-9);
    phi0 -= shift;
    phi1 -= shift;
  }
  bc.from.phi = phi0;
  bc.to.phi = phi1;
  return bc;
}

}  // namespace internal

// The four sides of a pixel: NE, NW, SE, SW. The `from`/`to` azimuths are
// given in the curve's own (unreduced) domain.
inline std::array<BoundaryCurve, 4> pixel_boundary(const PixelIndex& idx) {
  validate(idx);
  const double L = static_cast<double>(1 << idx.ell);
  const LocalCell cell = local_cell(idx);
  const double p = static_cast<double>(cell.p) / L;
  const double q = static_cast<double>(cell.q) / L;
  const double h = 1.0 / L;
  return {internal::make_side(idx, true, p + h, q + h, q),
          internal::make_side(idx, false, q + h, p + h, p),
          internal::make_side(idx, false, q, p, p + h),
          internal::make_side(idx, true, p, q, q + h)};
}

// Shared-vertex structure of one level: vertex ids per pixel (N, E, S, W) and
// the pixels incident to each vertex.
class PixelTopology {
 public:
  explicit PixelTopology(int ell) : ell_(ell) {
    const int64_t n = num_pixels(ell);
    pixel_vertices_.resize(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
      const auto vs = pixel_vertices(pixel_from_ordinal(i, ell));
      for (int v = 0; v < 4; ++v) {
        const int id = intern(to_cartesian(vs[v]));
        pixel_vertices_[i][v] = id;
        auto& inc = incident_[id];
        if (std::find(inc.begin(), inc.end(), i) == inc.end()) inc.push_back(i);
      }
    }
  }

  int ell() const { return ell_; }
  size_t num_vertices() const { return vertices_.size(); }
  const UnitVector& vertex(int id) const { return vertices_[id]; }
  const std::array<int, 4>& vertices_of(int64_t ordinal) const { return pixel_vertices_[ordinal]; }
  const std::vector<int64_t>& pixels_at(int id) const { return incident_[id]; }

  // Half-open owner of a vertex: the pixel having it as its southern corner,
  // found by locating a point just north of it.
  int64_t owner(int id) const {
    SphericalAngles a = to_angles(vertices_[id]);
    a.theta = std::max(0.0, a.theta - 1e-9);
    return pixel_ordinal(point_to_pixel(a, ell_));
  }

  int shared_vertices(int64_t a, int64_t b) const {
    int shared = 0;
    for (int u : pixel_vertices_[a]) {
      for (int v : pixel_vertices_[b]) shared += (u == v);
    }
    return shared;
  }
  // True when the two pixels share a side (two vertices).
  bool edge_adjacent(int64_t a, int64_t b) const { return shared_vertices(a, b) >= 2; }

  // Cached instance per level; not safe for concurrent first use.
  static const PixelTopology& for_level(int ell) {
    static std::unordered_map<int, std::unique_ptr<PixelTopology>> cache;
    auto& slot = cache[ell];
    if (!slot) slot = std::make_unique<PixelTopology>(ell);
    return *slot;
  }

 private:
  static constexpr double kScale = 0x1.0p28;

  static int64_t key(int64_t a, int64_t b, int64_t c) {
    return (a * 73856093) ^ (b * 19349663) ^ (c * 83492791);
  }

  int intern(const UnitVector& v) {
    const int64_t fx = static_cast<int64_t>(std::floor(v.x * kScale));
    const int64_t fy = static_cast<int64_t>(std::floor(v.y * kScale));
    const int64_t fz = static_cast<int64_t>(std::floor(v.z * kScale));
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = buckets_.find(key(fx + dx, fy + dy, fz + dz));
          if (it == buckets_.end()) continue;
          for (int id : it->second) {
            const UnitVector& u = vertices_[id];
            if (std::fabs(u.x - v.x) < 1e-10 && std::fabs(u.y - v.y) < 1e-10 &&
                std::fabs(u.z - v.z) < 1e-10) {
              return id;
            }
          }
        }
      }
    }
    const int id = static_cast<int>(vertices_.size());
    vertices_.push_back(v);
    incident_.emplace_back();
    buckets_[key(fx, fy, fz)].push_back(id);
    return id;
  }

  int ell_;
  std::vector<UnitVector> vertices_;
  std::vector<std::array<int, 4>> pixel_vertices_;
  std::vector<std::vector<int64_t>> incident_;
  std::unordered_map<int64_t, std::vector<int>> buckets_;
};

// Monte-Carlo check of area preservation inside one base pixel B: the
// fraction of B covered by A measured on the sphere and in the plane.
struct AreaRatio {
  double sphere = 0.0;
  double planar = 0.0;
  double sphere_stderr = 0.0;
  double planar_stderr = 0.0;
  double difference() const { return sphere - planar; }
};

inline AreaRatio area_ratio(const std::function<bool(const UnitVector&)>& in_region,
                            const PixelIndex& base, int64_t samples, uint64_t seed) {
  validate(base);
  if (base.ell != 0) throw InvalidIndex("area_ratio expects a base pixel");
  Rng rng(seed, 1);
  int64_t in_base = 0;
  int64_t in_both = 0;
  for (int64_t i = 0; i < samples; ++i) {
    const UnitVector v = random_unit_vector(rng);
    if (point_to_pixel(v, 0) != base) continue;
    ++in_base;
    if (in_region(v)) ++in_both;
  }
  Rng prng(seed, 2);
  int64_t planar_hits = 0;
  for (int64_t i = 0; i < samples; ++i) {
    const double a = prng.uniform();
    const double b = prng.uniform();
    const SphericalAngles s = facet_unproject(base.s, base.k, facet_point(base.s, base.k, a, b));
    if (in_region(to_cartesian(s))) ++planar_hits;
  }
  AreaRatio out;
  out.sphere = in_base ? static_cast<double>(in_both) / static_cast<double>(in_base) : 0.0;
  out.planar = static_cast<double>(planar_hits) / static_cast<double>(samples);
  out.sphere_stderr = in_base ? std::sqrt(out.sphere * (1 - out.sphere) / in_base) : 0.0;
  out.planar_stderr = std::sqrt(out.planar * (1 - out.planar) / samples);
  return out;
}

}  // namespace hpxcap

#endif  // HPXCAP_TESSELLATION_HPP_
