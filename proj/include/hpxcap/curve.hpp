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

// Piecewise-parametric planar curves with an adaptive polyline cache, and
// the construction of projected cap boundaries.

#ifndef HPXCAP_CURVE_HPP_
#define HPXCAP_CURVE_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hpxcap/curvature.hpp"
#include "hpxcap/errors.hpp"
#include "hpxcap/geometry.hpp"
#include "hpxcap/projection.hpp"

namespace hpxcap {

// Maximum planar distance between consecutive polyline samples.
inline constexpr double kPolylineStep = 0x1.0p-12;

// How a piece meets its successor.
enum class Join {
  kSmooth,  // C^2: seam crossing in the belt or a branch endpoint
  kKink,    // continuous, curvature jumps: belt/polar separation
  kTear,    // discontinuous: quadrant meridian in a polar cap, or a pole
  kEnd,     // last piece of an open curve
};

struct CurvePiece {
  std::function<PlanarPoint(double)> eval;
  std::function<double(double)> curvature;  // signed; empty if unknown
  double s0 = 0.0;
  double s1 = 1.0;
  Region region = Region::kBelt;
  int facet = -1;  // polar quadrant, -1 in the belt
  Branch branch = Branch::kPlus;
  int wrap = 0;    // number of 2-periods added to x
  bool affine = false;
  Join join = Join::kEnd;
};

struct PieceSamples {
  std::vector<double> s;
  std::vector<PlanarPoint> p;
};

class PlanarCurve {
 public:
  PlanarCurve() = default;
  explicit PlanarCurve(std::vector<CurvePiece> pieces, bool closed = false)
      : pieces_(std::move(pieces)), closed_(closed) {}

  // Straight segment from a to b, parametrized on [0, 1].
  static PlanarCurve segment(PlanarPoint a, PlanarPoint b) {
    CurvePiece piece;
    piece.eval = [a, b](double s) { return a + s * (b - a); };
    piece.curvature = [](double) { return 0.0; };
    piece.affine = true;
    return PlanarCurve({piece});
  }

  // Circular arc of the given radius from angle a0 to a1 (counterclockwise
  // if a1 > a0). A full turn yields a closed curve.
  static PlanarCurve arc(PlanarPoint center, double radius, double a0, double a1) {
    CurvePiece piece;
    piece.eval = [center, radius](double s) {
      return PlanarPoint{center.x + radius * std::cos(s), center.y + radius * std::sin(s)};
    };
    const double k = (a1 > a0 ? 1.0 : -1.0) / radius;
    piece.curvature = [k](double) { return k; };
    piece.s0 = std::min(a0, a1);
    piece.s1 = std::max(a0, a1);
    if (a1 < a0) {
      piece.eval = [center, radius, a0, a1](double s) {
        const double r = a0 + a1 - s;
        return PlanarPoint{center.x + radius * std::cos(r), center.y + radius * std::sin(r)};
      };
    }
    const bool full = std::fabs(std::fabs(a1 - a0) - kTwoPi) < 1e-15;
    return PlanarCurve({piece}, full);
  }

  // Generic smooth curve; curvature falls back to finite differences.
  static PlanarCurve parametric(std::function<PlanarPoint(double)> f, double s0, double s1,
                                bool closed = false) {
    CurvePiece piece;
    piece.eval = std::move(f);
    piece.s0 = s0;
    piece.s1 = s1;
    return PlanarCurve({piece}, closed);
  }

  const std::vector<CurvePiece>& pieces() const { return pieces_; }
  std::vector<CurvePiece>& mutable_pieces() {
    cache_.reset();
    return pieces_;
  }
  // The last piece ends where the first begins.
  bool closed() const { return closed_; }
  const std::optional<Cap>& source() const { return source_; }
  void set_source(const Cap& c) { source_ = c; }

  // Adaptive samples per piece; built on first use. Not safe to call
  // concurrently before freeze().
  const std::vector<PieceSamples>& polyline() const {
    if (!cache_) cache_ = std::make_shared<std::vector<PieceSamples>>(build_polyline());
    return *cache_;
  }
  void freeze() const { polyline(); }

 private:
  std::vector<PieceSamples> build_polyline() const {
    std::vector<PieceSamples> out;
    out.reserve(pieces_.size());
    for (const CurvePiece& piece : pieces_) out.push_back(sample_piece(piece));
    return out;
  }

  static PieceSamples sample_piece(const CurvePiece& piece) {
    PieceSamples ps;
    if (piece.affine) {
      ps.s = {piece.s0, piece.s1};
      ps.p = {piece.eval(piece.s0), piece.eval(piece.s1)};
      return ps;
    }
    constexpr int kInitial = 32;
    constexpr int kMaxDepth = 48;
    struct Span {
      double a, b;
      PlanarPoint pa, pb;
      int depth;
    };
    ps.s.push_back(piece.s0);
    ps.p.push_back(piece.eval(piece.s0));
    std::vector<Span> stack;
    for (int i = kInitial; i >= 1; --i) {
      const double a = piece.s0 + (piece.s1 - piece.s0) * (i - 1) / kInitial;
      const double b = i == kInitial ? piece.s1 : piece.s0 + (piece.s1 - piece.s0) * i / kInitial;
      stack.push_back({a, b, piece.eval(a), piece.eval(b), 0});
    }
    // Depth-first, left to right: the stack top is always the leftmost span.
    while (!stack.empty()) {
      Span sp = stack.back();
      stack.pop_back();
      if (planar_norm(sp.pb - sp.pa) < kPolylineStep || sp.depth >= kMaxDepth) {
        ps.s.push_back(sp.b);
        ps.p.push_back(sp.pb);
        continue;
      }
      const double m = 0.5 * (sp.a + sp.b);
      const PlanarPoint pm = piece.eval(m);
      stack.push_back({m, sp.b, pm, sp.pb, sp.depth + 1});
      stack.push_back({sp.a, m, sp.pa, pm, sp.depth + 1});
    }
    return ps;
  }

  std::vector<CurvePiece> pieces_;
  bool closed_ = false;
  std::optional<Cap> source_;
  mutable std::shared_ptr<std::vector<PieceSamples>> cache_;
};

namespace internal {

inline double adaptive_length(const std::function<PlanarPoint(double)>& f, double a, PlanarPoint fa,
                              double b, PlanarPoint fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const PlanarPoint fm = f(m);
  const double coarse = planar_norm(fb - fa);
  const double fine = planar_norm(fm - fa) + planar_norm(fb - fm);
  if (depth >= 40 || (depth >= 4 && fine - coarse < tol)) return fine + (fine - coarse) / 3.0;
  return adaptive_length(f, a, fa, m, fm, 0.5 * tol, depth + 1) +
         adaptive_length(f, m, fm, b, fb, 0.5 * tol, depth + 1);
}

}  // namespace internal

// Adaptive chord refinement with a Richardson correction; the error is far
// below `tol`.
inline double piece_length(const CurvePiece& piece, double tol = 1e-8) {
  const PlanarPoint a = piece.eval(piece.s0);
  const PlanarPoint b = piece.eval(piece.s1);
  if (piece.affine) return planar_norm(b - a);
  return internal::adaptive_length(piece.eval, piece.s0, a, piece.s1, b, tol, 0);
}

// Arc length in the unwrapped plane; pieces are measured independently, so
// tears contribute nothing.
inline double curve_length(const PlanarCurve& curve, double tol = 1e-8) {
  double total = 0.0;
  for (const CurvePiece& piece : curve.pieces()) total += piece_length(piece, tol);
  return total;
}

// Length of the polyline mapped by an invertible linear map.
inline double polyline_length(const PlanarCurve& curve, const Mat2& m = Mat2{}) {
  double total = 0.0;
  for (const PieceSamples& ps : curve.polyline()) {
    for (size_t i = 1; i < ps.p.size(); ++i) total += planar_norm(m.apply(ps.p[i] - ps.p[i - 1]));
  }
  return total;
}

namespace internal {

// Solutions psi in [0, 2 pi) of a cos(psi) + b sin(psi) + d = 0, transversal only.
inline std::vector<double> trig_roots(double a, double b, double d) {
  const double R = std::hypot(a, b);
  if (R < 1e-300) return {};
  const double g = -d / R;
  if (!(std::fabs(g) < 1.0)) return {};
  const double alpha = std::atan2(b, a);
  const double delta = std::acos(g);
  return {normalize_angle(alpha + delta), normalize_angle(alpha - delta)};
}

struct Split {
  double psi;
  Join join;
  bool seam;
};

}  // namespace internal

// Image of the boundary circle of `cap` under the projection, parametrized
// by the circle angle psi (see cap_frame). Pieces are cut at the belt/polar
// separation, quadrant meridians inside the polar caps, the x = 0 seam, the
// poles and the branch endpoints (top and bottom of the circle).
inline PlanarCurve projected_cap_boundary(const Cap& cap) {
  if (!(std::fabs(cap.t) < 1.0)) throw DegenerateCap("cap height must lie in (-1, 1)");
  const CapFrame f = cap_frame(cap);
  const double tw = cap.theta_w();
  const double phi_w = cap.phi_w();
  const bool flat = internal::is_pole_centered(tw) || internal::is_meridian_cap(tw, cap.t);
  auto point = [cap, f](double psi) { return cap_circle_point(cap, f, psi); };
  const double r = f.radius;

  std::vector<internal::Split> splits;
  // Coordinate c(psi) = t w_c + r (cos psi e1_c + sin psi e2_c).
  auto coord_roots = [&](double wc, double e1c, double e2c, double level) {
    return internal::trig_roots(r * e1c, r * e2c, cap.t * wc - level);
  };
  for (double h : {kBeltHeight, -kBeltHeight}) {
    for (double psi : coord_roots(cap.w.z, f.e1.z, f.e2.z, h)) {
      splits.push_back({psi, Join::kKink, false});
    }
  }
  std::vector<double> pole_psi;
  for (const UnitVector& pole : {kNorthPole, kSouthPole}) {
    if (std::fabs(dot(pole, cap.w) - cap.t) <= internal::kPoleOnBoundaryTolerance && r > 0) {
      const UnitVector d{pole.x - cap.t * cap.w.x, pole.y - cap.t * cap.w.y,
                         pole.z - cap.t * cap.w.z};
      const double psi = normalize_angle(std::atan2(dot(d, f.e2), dot(d, f.e1)));
      pole_psi.push_back(psi);
      splits.push_back({psi, Join::kTear, false});
    }
  }
  auto near_pole = [&](double psi) {
    for (double p : pole_psi) {
      if (std::fabs(std::remainder(psi - p, kTwoPi)) < 1e-7) return true;
    }
    return false;
  };
  // Quadrant meridians: phi = 0, pi lie on y = 0; phi = pi/2, 3pi/2 on x = 0.
  for (int m = 0; m < 4; ++m) {
    const bool on_x_axis = (m % 2 == 0);
    const std::vector<double> roots = on_x_axis ? coord_roots(cap.w.y, f.e1.y, f.e2.y, 0.0)
                                                : coord_roots(cap.w.x, f.e1.x, f.e2.x, 0.0);
    for (double psi : roots) {
      if (near_pole(psi)) continue;
      const UnitVector p = point(psi);
      const double side = on_x_axis ? p.x : p.y;
      if ((m < 2) != (side > 0)) continue;
      const bool polar = std::fabs(p.z) > kBeltHeight;
      if (m != 0 && !polar) continue;
      splits.push_back({psi, polar ? Join::kTear : Join::kSmooth, m == 0});
    }
  }
  if (!flat || internal::is_meridian_cap(tw, cap.t)) {
    // Extremes of z: d z / d psi = r (-sin psi e1_z + cos psi e2_z) = 0.
    if (std::hypot(f.e1.z, f.e2.z) > 1e-300) {
      const double alpha = std::atan2(f.e2.z, f.e1.z);
      for (double psi : {normalize_angle(alpha), normalize_angle(alpha + kPi)}) {
        if (!near_pole(psi)) splits.push_back({psi, Join::kSmooth, false});
      }
    }
  }
  std::sort(splits.begin(), splits.end(),
            [](const internal::Split& a, const internal::Split& b) { return a.psi < b.psi; });
  // Merge coincident cuts, keeping the strongest join and any seam flag.
  std::vector<internal::Split> cuts;
  for (const internal::Split& s : splits) {
    if (!cuts.empty() && s.psi - cuts.back().psi < 1e-12) {
      cuts.back().join = std::max(cuts.back().join, s.join);
      cuts.back().seam = cuts.back().seam || s.seam;
      continue;
    }
    cuts.push_back(s);
  }
  if (cuts.size() > 1 && cuts.front().psi + kTwoPi - cuts.back().psi < 1e-12) {
    cuts.front().join = std::max(cuts.front().join, cuts.back().join);
    cuts.front().seam = cuts.front().seam || cuts.back().seam;
    cuts.pop_back();
  }
  if (cuts.empty()) cuts.push_back({0.0, Join::kSmooth, false});

  // Wrap counter per piece: crossing y = 0 upward takes phi from 2 pi to 0.
  const size_t n = cuts.size();
  auto seam_step = [&](double psi) {
    const double dy = r * (-std::sin(psi) * f.e1.y + std::cos(psi) * f.e2.y);
    return dy > 0 ? 1 : -1;
  };
  std::vector<int> wraps(n, 0);
  for (size_t i = 1; i < n; ++i) wraps[i] = wraps[i - 1] + (cuts[i].seam ? seam_step(cuts[i].psi) : 0);
  const int net = wraps[n - 1] + (cuts[0].seam ? seam_step(cuts[0].psi) : 0);
  // An open curve starts after its strongest join: a tear, else a kink, else the seam.
  size_t start = 0;
  bool has_tear = false;
  for (size_t i = 0; i < n; ++i) has_tear = has_tear || cuts[i].join == Join::kTear;
  if (net != 0 || has_tear) {
    auto find = [&](auto pred) -> std::optional<size_t> {
      for (size_t i = 0; i < n; ++i) {
        if (pred(cuts[i])) return i;
      }
      return std::nullopt;
    };
    if (auto i = find([](const internal::Split& c) { return c.join == Join::kTear; })) {
      start = *i;
    } else if (auto k = find([](const internal::Split& c) { return c.join == Join::kKink; })) {
      start = *k;
    } else if (auto m = find([](const internal::Split& c) { return c.seam; })) {
      start = *m;
    }
  }
  const bool closed = net == 0 && !has_tear;

  std::vector<CurvePiece> pieces;
  for (size_t j = 0; j < n; ++j) {
    const size_t i = (start + j) % n;
    const bool lap = i < start;  // piece reached after passing psi = 2 pi
    const double a = cuts[i].psi + (lap ? kTwoPi : 0.0);
    const double b = (i + 1 < n ? cuts[i + 1].psi : cuts[0].psi + kTwoPi) + (lap ? kTwoPi : 0.0);
    const int wrap = wraps[i] + (lap ? net : 0) - wraps[start];
    const double mid = 0.5 * (a + b);
    const UnitVector pm = point(mid);
    const SphericalAngles am = to_angles(pm);
    CurvePiece piece;
    piece.s0 = a;
    piece.s1 = b;
    piece.region = region_of_z(pm.z);
    piece.facet = piece.region == Region::kBelt ? -1 : quadrant_of(am.phi);
    piece.branch = std::sin(am.phi - phi_w) >= 0 ? Branch::kPlus : Branch::kMinus;
    piece.wrap = wrap;
    piece.join = cuts[(i + 1) % n].join;
    const double dz = r * (-std::sin(mid) * f.e1.z + std::cos(mid) * f.e2.z);
    const double orient = dz > 0 ? -1.0 : 1.0;  // sign of d theta / d psi
    const double xshift = 2.0 * wrap;
    if (piece.region == Region::kBelt) {
      const double inset = 1e-6 * (b - a);
      piece.eval = [point, xshift, mid, inset](double psi) {
        const UnitVector p = point(psi);
        double phi = to_angles(p).phi;
        if (phi < 1e-9 || phi > kTwoPi - 1e-9) {
          // On the seam: take the side of the neighbouring interior point.
          const double ref = to_angles(point(psi + (psi < mid ? inset : -inset))).phi;
          if (phi < 1e-9 && ref > kPi) phi += kTwoPi;
          if (phi > kTwoPi - 1e-9 && ref < kPi) phi -= kTwoPi;
        }
        return PlanarPoint{phi / kPi + xshift, 0.375 * p.z};
      };
    } else {
      const Region reg = piece.region;
      const int k = piece.facet;
      piece.eval = [point, reg, k, xshift](double psi) {
        const SphericalAngles a = to_angles(point(psi));
        const double pc = quadrant_center(k);
        const double u = std::clamp(std::remainder(a.phi - pc, kTwoPi), -0.25 * kPi, 0.25 * kPi);
        const double sigma = polar_sigma(a.theta, reg);
        const double y = 0.25 * (2.0 - sigma);
        return PlanarPoint{(pc + sigma * u) / kPi + xshift, reg == Region::kNorth ? y : -y};
      };
    }
    if (flat) {
      piece.curvature = [](double) { return 0.0; };
      piece.affine = true;
    } else {
      const Interval range = cap_boundary_theta_range(cap);
      const Region reg = piece.region;
      const Branch br = piece.branch;
      const int k = piece.facet;
      const double t = cap.t;
      piece.curvature = [point, range, reg, br, k, tw, phi_w, t, orient](double psi) {
        const double th = std::clamp(to_angles(point(psi)).theta, range.lo, range.hi);
        const double kt = reg == Region::kBelt ? curvature_equatorial(th, tw, t, br)
                                               : curvature_polar(th, tw, phi_w, t, br, k);
        return orient * kt;
      };
    }
    pieces.push_back(std::move(piece));
  }
  if (!closed && pieces.back().join != Join::kTear) pieces.back().join = Join::kEnd;
  PlanarCurve out(std::move(pieces), closed);
  out.set_source(cap);
  return out;
}

}  // namespace hpxcap

#endif  // HPXCAP_CURVE_HPP_
