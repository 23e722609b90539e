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

// Cells of a lattice tiling touched by a planar polyline, and pixel counting
// in the projected plane.

#ifndef HPXCAP_LATTICE_HPP_
#define HPXCAP_LATTICE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hpxcap/curve.hpp"
#include "hpxcap/projection.hpp"
#include "hpxcap/tessellation.hpp"

namespace hpxcap {

// Which cells count as touched.
enum class TouchConvention {
  kOpen,       // the curve meets the cell interior
  kPartition,  // half-open cells [I, I+1) x [J, J+1): every point in one cell
  kClosed,     // the curve meets the closed cell, vertex touches included
};

// Slack, in lattice units, for deciding that a point lies on a grid line.
inline constexpr double kLatticeTolerance = 1e-9;

struct LatticeCell {
  int64_t i = 0;
  int64_t j = 0;
  friend auto operator<=>(const LatticeCell&, const LatticeCell&) = default;
};

namespace internal {

// Liang-Barsky: does segment a -> b meet the closed box [lo, hi]^2 + offset?
inline bool segment_meets_box(PlanarPoint a, PlanarPoint b, double x0, double x1, double y0,
                              double y1) {
  double t0 = 0.0, t1 = 1.0;
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - x0, x1 - a.x, a.y - y0, y1 - a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
      continue;
    }
    const double r = q[k] / p[k];
    if (p[k] < 0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  return true;
}

inline void box_for(TouchConvention conv, int64_t I, double tol, double& lo, double& hi) {
  const double d = static_cast<double>(I);
  switch (conv) {
    case TouchConvention::kOpen: lo = d + tol; hi = d + 1.0 - tol; break;
    case TouchConvention::kPartition: lo = d; hi = d + 1.0; break;
    case TouchConvention::kClosed: lo = d - tol; hi = d + 1.0 + tol; break;
  }
}

// Does segment a -> b meet the half-open box [x0, x1) x [y0, y1)? Exact
// on the given coordinates.
inline bool segment_meets_half_open(PlanarPoint a, PlanarPoint b, double x0, double x1,
                                    double y0, double y1) {
  // Feasible parameters form an interval whose ends may be open.
  double lo = 0.0, hi = 1.0;
  bool lo_open = false, hi_open = false;
  auto clip = [&](double p0, double d, double bound, bool upper, bool open) {
    // Constraint p0 + t d >= bound (lower) or < bound (upper, open).
    const double gap = upper ? bound - p0 : p0 - bound;
    const double slope = upper ? d : -d;
    if (slope == 0.0) return open ? gap > 0.0 : gap >= 0.0;
    const double r = gap / slope;
    if (slope > 0.0) {
      if (r < hi || (r == hi && open)) { hi = r; hi_open = open; }
    } else {
      if (r > lo || (r == lo && open)) { lo = r; lo_open = open; }
    }
    return true;
  };
  const double dx = b.x - a.x, dy = b.y - a.y;
  if (!clip(a.x, dx, x0, false, false) || !clip(a.x, dx, x1, true, true) ||
      !clip(a.y, dy, y0, false, false) || !clip(a.y, dy, y1, true, true)) {
    return false;
  }
  return lo < hi || (lo == hi && !lo_open && !hi_open);
}

inline double snap(double u, double tol) {
  const double r = std::round(u);
  return std::fabs(u - r) < tol ? r : u;
}

inline void segment_cells(PlanarPoint a, PlanarPoint b, TouchConvention conv,
                          std::vector<LatticeCell>& out) {
  const double tol = kLatticeTolerance;
  if (conv == TouchConvention::kPartition) {
    // Coordinates within tol of a grid line are taken to lie on it.
    a = {snap(a.x, tol), snap(a.y, tol)};
    b = {snap(b.x, tol), snap(b.y, tol)};
  }
  const int64_t i0 = static_cast<int64_t>(std::floor(std::min(a.x, b.x) - tol));
  const int64_t i1 = static_cast<int64_t>(std::floor(std::max(a.x, b.x) + tol));
  const int64_t j0 = static_cast<int64_t>(std::floor(std::min(a.y, b.y) - tol));
  const int64_t j1 = static_cast<int64_t>(std::floor(std::max(a.y, b.y) + tol));
  if (i0 == i1 && j0 == j1) {
    // Both ends well inside one cell.
    out.push_back({i0, j0});
    return;
  }
  for (int64_t i = i0; i <= i1; ++i) {
    for (int64_t j = j0; j <= j1; ++j) {
      bool meets;
      if (conv == TouchConvention::kPartition) {
        const double x = static_cast<double>(i), y = static_cast<double>(j);
        meets = segment_meets_half_open(a, b, x, x + 1.0, y, y + 1.0);
      } else {
        double x0, x1, y0, y1;
        box_for(conv, i, tol, x0, x1);
        box_for(conv, j, tol, y0, y1);
        meets = segment_meets_box(a, b, x0, x1, y0, y1);
      }
      if (meets) out.push_back({i, j});
    }
  }
}

}  // namespace internal

// Lattice cells touched by the polyline of one piece, in lattice coordinates.
inline std::vector<LatticeCell> piece_cells(const PieceSamples& ps, const LatticeSpec& lat,
                                            TouchConvention conv) {
  std::vector<LatticeCell> cells;
  std::vector<PlanarPoint> q;
  q.reserve(ps.p.size());
  for (const PlanarPoint& p : ps.p) q.push_back(lat.to_lattice(p));
  if (q.size() == 1) q.push_back(q.front());
  for (size_t i = 1; i < q.size(); ++i) internal::segment_cells(q[i - 1], q[i], conv, cells);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

// Number of distinct cells of (1/K)(Q Z^2 + Q[0,1)^2 + v) touched by the
// curve's polyline.
inline int64_t lattice_intersection_count(const PlanarCurve& curve, const LatticeSpec& lat,
                                          TouchConvention conv = TouchConvention::kClosed) {
  std::set<LatticeCell> all;
  for (const PieceSamples& ps : curve.polyline()) {
    for (const LatticeCell& c : piece_cells(ps, lat, conv)) all.insert(c);
  }
  return static_cast<int64_t>(all.size());
}

namespace internal {

// Pixel of a level-ell lattice cell seen from a polar piece in facet (s, k);
// glued across the torn quadrant meridians. Returns false for cells that lie
// in an empty corner.
inline bool cell_pixel(int s, int k, int ell, int64_t I, int64_t J, TouchConvention conv,
                       std::vector<int64_t>& out) {
  const int64_t L = int64_t{1} << ell;
  if (s != 0) {
    const FacetCell o = facet_origin(s, k);
    const int64_t p = I - L * o.i;
    const int64_t q = J - L * o.j;
    auto push = [&](int kk, int64_t pp, int64_t qq) {
      out.push_back(pixel_ordinal(pixel_from_local(s, (kk + 4) % 4, ell, {pp, qq})));
    };
    // Apex corner (L, L) in the north, (-1, -1) in the south.
    const int64_t edge = s > 0 ? L : -1;
    if (p == edge && q == edge) {
      if (conv == TouchConvention::kClosed) {
        for (int kk = 0; kk < 4; ++kk) {
          out.push_back(pixel_ordinal({s, kk, ell, 1, 1}));
        }
      } else if (conv == TouchConvention::kPartition) {
        out.push_back(pixel_ordinal({s, 0, ell, 1, 1}));
      }
      return true;
    }
    if (s > 0) {
      if (q == L && p >= 0 && p < L) { push(k - 1, L - 1, p); return true; }
      if (p == L && q >= 0 && q < L) { push(k + 1, q, L - 1); return true; }
    } else {
      if (p == -1 && q >= 0 && q < L) { push(k - 1, q, 0); return true; }
      if (q == -1 && p >= 0 && p < L) { push(k + 1, 0, p); return true; }
    }
    if (p >= 0 && p < L && q >= 0 && q < L) { push(k, p, q); return true; }
  }
  const int64_t fi = floor_div(I, L);
  const int64_t fj = floor_div(J, L);
  const int64_t sum = fi + fj;
  int ss, kk;
  if (sum == 0) {
    ss = 0;
    kk = static_cast<int>(floor_mod(fi, 4));
  } else if (sum == 1) {
    ss = 1;
    kk = static_cast<int>(floor_mod(-fj, 4));
  } else if (sum == -1) {
    ss = -1;
    kk = static_cast<int>(floor_mod(fi, 4));
  } else {
    return false;
  }
  out.push_back(pixel_ordinal(pixel_from_local(ss, kk, ell, {I - L * fi, J - L * fj})));
  return true;
}

}  // namespace internal

// Pixels whose projected cell meets the projected cap boundary, computed
// entirely in the plane. Independent of cap_pixel_intersection_count.
inline std::vector<int64_t> planar_cap_pixels(const Cap& cap, int ell, TouchConvention conv) {
  const PlanarCurve curve = projected_cap_boundary(cap);
  const LatticeSpec lat = pixel_lattice(ell);
  const int64_t L = int64_t{1} << ell;
  std::vector<int64_t> out;
  const auto& poly = curve.polyline();
  for (size_t i = 0; i < poly.size(); ++i) {
    const CurvePiece& piece = curve.pieces()[i];
    const int s = piece.region == Region::kNorth ? 1 : piece.region == Region::kSouth ? -1 : 0;
    for (const LatticeCell& c : piece_cells(poly[i], lat, conv)) {
      // Remove the x-periods carried by the piece: x + 2 is (I + 4L, J - 4L).
      const int64_t I = c.i - 4 * L * piece.wrap;
      const int64_t J = c.j + 4 * L * piece.wrap;
      internal::cell_pixel(s, piece.facet, ell, I, J, conv, out);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hpxcap

#endif  // HPXCAP_LATTICE_HPP_
