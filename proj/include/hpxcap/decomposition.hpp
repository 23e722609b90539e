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

// Splitting planar curves into sub-spirals (single-signed curvature, no
// self-intersection) and sub-spirals into convex arcs by tangent-ray
// shooting.

#ifndef HPXCAP_DECOMPOSITION_HPP_
#define HPXCAP_DECOMPOSITION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hpxcap/curvature.hpp"
#include "hpxcap/curve.hpp"
#include "hpxcap/errors.hpp"
#include "hpxcap/geometry.hpp"

namespace hpxcap {

inline constexpr double kSelfIntersectionTolerance = 1e-10;
inline constexpr double kConvexityTolerance = 1e-9;
inline constexpr int kMaxRayIterations = 200;

// A piece of a PlanarCurve restricted to [a, b].
struct Span {
  int piece = 0;
  double a = 0.0;
  double b = 0.0;
};

// Consecutive spans forming one continuous arc; `loop` if it closes up.
struct Run {
  std::vector<Span> spans;
  bool loop = false;
};

// A polyline with the curve parameter of every vertex.
struct Chain {
  std::vector<PlanarPoint> p;
  std::vector<Span> at;  // at[i].piece and at[i].a give the parameter of p[i]

  size_t segments() const { return p.empty() ? 0 : p.size() - 1; }
};

namespace internal {

// Groups pieces whose joins satisfy `joined` into maximal runs.
template <typename Pred>
std::vector<Run> group_pieces(const PlanarCurve& curve, Pred joined) {
  const auto& pcs = curve.pieces();
  const int n = static_cast<int>(pcs.size());
  std::vector<Run> out;
  if (n == 0) return out;
  int start = 0;
  const bool wraps = curve.closed() && joined(pcs[n - 1].join);
  if (wraps) {
    start = -1;
    for (int i = 0; i < n; ++i) {
      if (!joined(pcs[i].join)) {
        start = (i + 1) % n;
        break;
      }
    }
    if (start < 0) {
      Run all;
      for (int i = 0; i < n; ++i) all.spans.push_back({i, pcs[i].s0, pcs[i].s1});
      all.loop = true;
      out.push_back(all);
      return out;
    }
  }
  Run cur;
  for (int step = 0; step < n; ++step) {
    const int i = (start + step) % n;
    cur.spans.push_back({i, pcs[i].s0, pcs[i].s1});
    if (!joined(pcs[i].join) || step == n - 1) {
      out.push_back(cur);
      cur = Run{};
    }
  }
  return out;
}

inline PlanarCurve curve_from_spans(const PlanarCurve& curve, const std::vector<Span>& spans,
                                    bool loop) {
  std::vector<CurvePiece> pieces;
  for (const Span& s : spans) {
    CurvePiece p = curve.pieces()[s.piece];
    p.s0 = s.a;
    p.s1 = s.b;
    p.join = Join::kSmooth;
    pieces.push_back(std::move(p));
  }
  if (!pieces.empty() && !loop) pieces.back().join = Join::kEnd;
  PlanarCurve out(std::move(pieces), loop);
  if (curve.source()) out.set_source(*curve.source());
  return out;
}

inline double piece_curvature(const CurvePiece& piece, double s) {
  if (piece.curvature) return piece.curvature(s);
  const double h = 1e-4 * (piece.s1 - piece.s0);
  const double a = std::clamp(s, piece.s0 + 2 * h, piece.s1 - 2 * h);
  const PlanarPoint m2 = piece.eval(a - 2 * h), m1 = piece.eval(a - h), c = piece.eval(a);
  const PlanarPoint p1 = piece.eval(a + h), p2 = piece.eval(a + 2 * h);
  const PlanarPoint d1 = (1.0 / (12 * h)) * (m2 - 8.0 * m1 + 8.0 * p1 - p2);
  const PlanarPoint d2 = (1.0 / (12 * h * h)) * ((-1.0) * m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2);
  return planar_cross(d1, d2) / std::pow(planar_dot(d1, d1), 1.5);
}

inline Chain chain_of(const PlanarCurve& curve) {
  Chain ch;
  const auto& poly = curve.polyline();
  for (size_t i = 0; i < poly.size(); ++i) {
    for (size_t j = (i == 0 ? 0 : 1); j < poly[i].p.size(); ++j) {
      ch.p.push_back(poly[i].p[j]);
      ch.at.push_back({static_cast<int>(i), poly[i].s[j], poly[i].s[j]});
    }
  }
  return ch;
}

inline double point_segment_distance(PlanarPoint p, PlanarPoint a, PlanarPoint b) {
  const PlanarPoint ab = b - a;
  const double len2 = planar_dot(ab, ab);
  double u = len2 > 0 ? planar_dot(p - a, ab) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return planar_norm(p - (a + u * ab));
}

inline int orientation(PlanarPoint a, PlanarPoint b, PlanarPoint c) {
  const double v = planar_cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

inline double segment_distance(PlanarPoint a, PlanarPoint b, PlanarPoint c, PlanarPoint d) {
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

}  // namespace internal

// Pairs of non-adjacent polyline segments within tolerance of each other,
// clustered so that one geometric crossing is reported once. For a closed
// chain the closure point itself is not reported.
inline std::vector<std::pair<size_t, size_t>> self_intersections(const Chain& ch, bool closed,
                                                                 double tol = kSelfIntersectionTolerance) {
  const size_t ns = ch.segments();
  std::vector<std::pair<size_t, size_t>> raw;
  if (ns < 3) return raw;
  constexpr double kCell = 0x1.0p-10;
  auto cell_key = [](int64_t cx, int64_t cy) { return (cx << 32) ^ (cy & 0xffffffffLL); };
  std::unordered_map<int64_t, std::vector<size_t>> grid;
  for (size_t i = 0; i < ns; ++i) {
    const PlanarPoint a = ch.p[i], b = ch.p[i + 1];
    const int64_t x0 = static_cast<int64_t>(std::floor((std::min(a.x, b.x) - tol) / kCell));
    const int64_t x1 = static_cast<int64_t>(std::floor((std::max(a.x, b.x) + tol) / kCell));
    const int64_t y0 = static_cast<int64_t>(std::floor((std::min(a.y, b.y) - tol) / kCell));
    const int64_t y1 = static_cast<int64_t>(std::floor((std::max(a.y, b.y) + tol) / kCell));
    std::set<size_t> seen;
    for (int64_t cx = x0; cx <= x1; ++cx) {
      for (int64_t cy = y0; cy <= y1; ++cy) {
        auto& bucket = grid[cell_key(cx, cy)];
        for (size_t j : bucket) {
          if (j + 1 >= i || seen.count(j)) continue;
          if (closed && j == 0 && i == ns - 1) continue;
          seen.insert(j);
          if (internal::segment_distance(ch.p[j], ch.p[j + 1], a, b) <= tol) raw.push_back({j, i});
        }
        bucket.push_back(i);
      }
    }
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<size_t, size_t>> out;
  for (const auto& pr : raw) {
    bool merged = false;
    for (auto& o : out) {
      const auto d1 = pr.first > o.first ? pr.first - o.first : o.first - pr.first;
      const auto d2 = pr.second > o.second ? pr.second - o.second : o.second - pr.second;
      if (d1 <= 3 && d2 <= 3) {
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(pr);
  }
  return out;
}

inline int self_intersection_count(const PlanarCurve& curve) {
  return static_cast<int>(self_intersections(internal::chain_of(curve), curve.closed()).size()) +
         (curve.closed() ? 1 : 0);
}

// Runs of pieces joined smoothly (curvature is continuous along each run).
inline std::vector<Run> smooth_runs(const PlanarCurve& curve) {
  return internal::group_pieces(curve, [](Join j) { return j == Join::kSmooth; });
}

// Connected components: runs joined by smooth joins or kinks.
inline std::vector<Run> connected_components(const PlanarCurve& curve) {
  return internal::group_pieces(curve, [](Join j) { return j == Join::kSmooth || j == Join::kKink; });
}

inline PlanarCurve run_curve(const PlanarCurve& curve, const Run& run) {
  return internal::curve_from_spans(curve, run.spans, run.loop);
}

namespace internal {

// Parameters (piece, s) inside a run where curvature changes sign.
inline std::vector<std::pair<int, double>> curvature_sign_changes(const PlanarCurve& curve,
                                                                  const Run& run) {
  std::vector<std::pair<int, double>> out;
  std::set<int> members;
  for (const Span& s : run.spans) members.insert(s.piece);
  const auto& pcs = curve.pieces();
  auto inside = [&](int i, double s) {
    return members.count(i) && s > pcs[i].s0 + 1e-12 && s < pcs[i].s1 - 1e-12;
  };
  if (curve.source()) {
    const Cap& cap = *curve.source();
    if (internal::is_pole_centered(cap.theta_w()) || internal::is_meridian_cap(cap.theta_w(), cap.t)) {
      return out;
    }
    const ZeroCount zc = curvature_zero_count(cap);
    const CapFrame f = cap_frame(cap);
    std::vector<double> roots = zc.belt_roots;
    roots.insert(roots.end(), zc.north_roots.begin(), zc.north_roots.end());
    roots.insert(roots.end(), zc.south_roots.begin(), zc.south_roots.end());
    for (double c : roots) {
      for (Branch b : {Branch::kPlus, Branch::kMinus}) {
        const UnitVector p = to_cartesian(cap_boundary_point(cap, std::acos(c), b));
        const UnitVector d{p.x - cap.t * cap.w.x, p.y - cap.t * cap.w.y, p.z - cap.t * cap.w.z};
        const double psi = std::atan2(dot(d, f.e2), dot(d, f.e1));
        for (int i = 0; i < static_cast<int>(pcs.size()); ++i) {
          for (double cand : {psi - kTwoPi, psi, psi + kTwoPi, psi + 2 * kTwoPi}) {
            if (inside(i, cand)) out.push_back({i, cand});
          }
        }
      }
    }
    return out;
  }
  const auto& poly = curve.polyline();
  for (const Span& sp : run.spans) {
    const CurvePiece& piece = pcs[sp.piece];
    const auto& ss = poly[sp.piece].s;
    double prev_s = ss.front();
    double prev_k = piece_curvature(piece, prev_s);
    for (size_t j = 1; j < ss.size(); ++j) {
      const double s = ss[j];
      const double k = piece_curvature(piece, s);
      if ((prev_k < -1e-12 && k > 1e-12) || (prev_k > 1e-12 && k < -1e-12)) {
        double lo = prev_s, hi = s, klo = prev_k;
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (lo + hi);
          const double km = piece_curvature(piece, m);
          if ((km < 0) == (klo < 0)) {
            lo = m;
            klo = km;
          } else {
            hi = m;
          }
        }
        out.push_back({sp.piece, 0.5 * (lo + hi)});
      }
      if (std::fabs(k) > 1e-12) {
        prev_s = s;
        prev_k = k;
      }
    }
  }
  return out;
}

// Cuts a run at the given interior parameters, in run order.
inline std::vector<std::vector<Span>> cut_run(const Run& run,
                                              std::vector<std::pair<int, double>> cuts) {
  std::vector<std::vector<Span>> out(1);
  for (const Span& sp : run.spans) {
    std::vector<double> here;
    for (const auto& c : cuts) {
      if (c.first == sp.piece && c.second > sp.a && c.second < sp.b) here.push_back(c.second);
    }
    std::sort(here.begin(), here.end());
    double a = sp.a;
    for (double s : here) {
      out.back().push_back({sp.piece, a, s});
      out.emplace_back();
      a = s;
    }
    out.back().push_back({sp.piece, a, sp.b});
  }
  return out;
}

inline void split_self_intersecting(const PlanarCurve& curve, const std::vector<Span>& spans,
                                    bool loop, int depth, std::vector<PlanarCurve>& out) {
  PlanarCurve sub = curve_from_spans(curve, spans, loop);
  const Chain ch = chain_of(sub);
  const auto hits = self_intersections(ch, loop);
  if ((hits.empty() && !loop) || depth > 64 || ch.p.size() < 4) {
    out.push_back(curve_from_spans(curve, spans, false));
    return;
  }
  // Cut halfway between the two crossing parameters (or halfway round a loop).
  const size_t mid = loop && hits.empty() ? ch.p.size() / 2
                                          : (hits.front().first + hits.front().second + 1) / 2;
  const Span at = ch.at[mid];
  const int piece_in_sub = at.piece;
  const double s = at.a;
  std::vector<Span> left, right;
  for (int i = 0; i < static_cast<int>(spans.size()); ++i) {
    const Span& sp = spans[i];
    if (i < piece_in_sub) {
      left.push_back(sp);
    } else if (i > piece_in_sub) {
      right.push_back(sp);
    } else {
      if (s > sp.a) left.push_back({sp.piece, sp.a, s});
      if (s < sp.b) right.push_back({sp.piece, s, sp.b});
    }
  }
  if (left.empty() || right.empty()) {
    out.push_back(curve_from_spans(curve, spans, false));
    return;
  }
  split_self_intersecting(curve, left, false, depth + 1, out);
  split_self_intersecting(curve, right, false, depth + 1, out);
}

}  // namespace internal

// Sub-spirals of the curve, in order. Each has single-signed curvature and
// no self-intersection.
inline std::vector<PlanarCurve> subspiral_split(const PlanarCurve& curve) {
  std::vector<PlanarCurve> out;
  for (const Run& run : smooth_runs(curve)) {
    const auto cuts = internal::curvature_sign_changes(curve, run);
    auto parts = internal::cut_run(run, cuts);
    // An uncut loop keeps its closure; a cut loop rejoins its first and last parts.
    bool loop = run.loop && parts.size() == 1;
    if (run.loop && parts.size() > 1) {
      auto& first = parts.front();
      auto& last = parts.back();
      last.insert(last.end(), first.begin(), first.end());
      parts.erase(parts.begin());
    }
    for (const auto& spans : parts) internal::split_self_intersecting(curve, spans, loop, 0, out);
  }
  return out;
}

struct ConvexDecomposition {
  int n = 1;                     // number of convex arcs
  std::vector<double> splits;    // chain parameters t_0 < ... < t_n
  int self_intersections = 0;    // m
  bool certified = true;         // every arc passed the convexity check
};

namespace internal {

struct RayHit {
  double param;
  double rho;
};

inline PlanarPoint chain_point(const Chain& ch, double tau) {
  const size_t n = ch.segments();
  if (tau <= 0) return ch.p.front();
  if (tau >= static_cast<double>(n)) return ch.p.back();
  const size_t i = static_cast<size_t>(tau);
  const double f = tau - static_cast<double>(i);
  return ch.p[i] + f * (ch.p[i + 1] - ch.p[i]);
}

// Unit tangent at chain parameter tau from the exact parametrization.
inline PlanarPoint chain_tangent(const PlanarCurve& curve, const Chain& ch, double tau) {
  const size_t n = ch.segments();
  const size_t i = std::min(n - 1, static_cast<size_t>(std::max(0.0, tau)));
  const double f = std::clamp(tau - static_cast<double>(i), 0.0, 1.0);
  const Span& a = ch.at[i];
  const Span& b = ch.at[i + 1];
  const CurvePiece& piece = curve.pieces()[b.piece];
  double s = b.piece == a.piece ? a.a + f * (b.a - a.a) : b.a;
  if (b.piece != a.piece && f < 1.0) s = piece.s0;
  const double h = 1e-7 * std::max(1e-12, piece.s1 - piece.s0);
  const double lo = std::max(piece.s0, s - h);
  const double hi = std::min(piece.s1, s + h);
  PlanarPoint d = piece.eval(hi) - piece.eval(lo);
  const double len = planar_norm(d);
  if (!(len > 1e-12 * (hi - lo)) || len == 0.0) {
    // Fall back to the chord, which is exact for affine pieces.
    d = ch.p[i + 1] - ch.p[i];
    const double cl = planar_norm(d);
    if (cl < 1e-300) throw NonRegularCurve("zero-velocity point");
    return (1.0 / cl) * d;
  }
  return (1.0 / len) * d;
}

// First hit, beyond tau, of the ray X + rho D with the chain.
inline std::optional<RayHit> shoot(const Chain& ch, double tau, PlanarPoint X, PlanarPoint D) {
  std::optional<RayHit> best;
  const size_t n = ch.segments();
  const size_t first = static_cast<size_t>(std::max(0.0, std::floor(tau)));
  for (size_t i = first; i < n; ++i) {
    const PlanarPoint a = ch.p[i];
    const PlanarPoint e = ch.p[i + 1] - a;
    const double den = planar_cross(D, e);
    if (std::fabs(den) < 1e-300) continue;
    const PlanarPoint w = a - X;
    const double rho = planar_cross(w, e) / den;
    const double f = planar_cross(w, D) / den;
    if (f < -1e-12 || f > 1.0 + 1e-12 || rho <= 1e-12) continue;
    const double param = static_cast<double>(i) + std::clamp(f, 0.0, 1.0);
    if (param <= tau + 1e-9) continue;
    if (!best || rho < best->rho) best = RayHit{param, rho};
  }
  return best;
}

inline std::vector<double> ray_loop(const PlanarCurve& curve, const Chain& ch, bool reversed) {
  const double n = static_cast<double>(ch.segments());
  Chain rc;
  if (reversed) {
    rc.p.assign(ch.p.rbegin(), ch.p.rend());
    rc.at.assign(ch.at.rbegin(), ch.at.rend());
  }
  const Chain& use = reversed ? rc : ch;
  std::vector<double> splits;
  double tau = 0.0;
  for (int it = 0;; ++it) {
    if (it >= kMaxRayIterations) throw NonRegularCurve("ray shooting did not terminate");
    const double orig = reversed ? n - tau : tau;
    PlanarPoint T = chain_tangent(curve, ch, orig);
    // Backward tangent of the traversal direction.
    const PlanarPoint D = reversed ? T : (-1.0) * T;
    const auto hit = shoot(use, tau, chain_point(use, tau), D);
    if (!hit || hit->param >= n - 1e-9) break;
    splits.push_back(reversed ? n - hit->param : hit->param);
    tau = hit->param;
  }
  return splits;
}

// Open polyline closed by its chord is a convex polygon: turns have one sign
// (up to tolerance) and wind at most once.
inline bool is_convex_arc(const std::vector<PlanarPoint>& q, double tol = kConvexityTolerance) {
  std::vector<PlanarPoint> pts;
  for (const PlanarPoint& p : q) {
    if (pts.empty() || planar_norm(p - pts.back()) > 1e-15) pts.push_back(p);
  }
  const size_t m = pts.size();
  if (m <= 2) return true;
  int sign = 0;
  double turning = 0.0;
  double pos = 0.0, neg = 0.0;
  std::vector<double> dev(m);
  for (size_t i = 0; i < m; ++i) {
    const PlanarPoint a = pts[(i + m - 1) % m], b = pts[i], c = pts[(i + 1) % m];
    const double base = planar_norm(c - a);
    dev[i] = base > 0 ? planar_cross(c - a, b - a) / base : 0.0;
    if (dev[i] > tol) pos += dev[i];
    if (dev[i] < -tol) neg -= dev[i];
  }
  sign = pos >= neg ? 1 : -1;
  for (size_t i = 0; i < m; ++i) {
    // A vertex bulging against the majority side breaks convexity.
    if (sign * dev[i] < -tol) return false;
  }
  for (size_t i = 0; i < m; ++i) {
    const PlanarPoint a = pts[(i + m - 1) % m], b = pts[i], c = pts[(i + 1) % m];
    const PlanarPoint u = b - a, v = c - b;
    const double cr = planar_cross(u, v);
    if (std::fabs(cr) <= tol * planar_norm(u) * planar_norm(v) && planar_dot(u, v) > 0) continue;
    turning += std::atan2(cr, planar_dot(u, v));
  }
  return std::fabs(turning) <= kTwoPi + 1e-6;
}

}  // namespace internal

// Convex decomposition of one sub-spiral by ray shooting from the start
// (Loop 1) and from the end of the reversed curve (Loop 2). Split parameters
// are chain positions: t in [0, #segments].
inline ConvexDecomposition convex_decomposition(const PlanarCurve& curve) {
  ConvexDecomposition out;
  const Chain ch = internal::chain_of(curve);
  const double n = static_cast<double>(ch.segments());
  out.splits = {0.0, n};
  if (ch.segments() == 0) return out;
  std::vector<double> cuts = internal::ray_loop(curve, ch, false);
  const std::vector<double> back = internal::ray_loop(curve, ch, true);
  cuts.insert(cuts.end(), back.begin(), back.end());
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> uniq;
  for (double c : cuts) {
    if (c <= 1e-9 || c >= n - 1e-9) continue;
    if (!uniq.empty() && c - uniq.back() < 1e-9) continue;
    uniq.push_back(c);
  }
  out.splits.clear();
  out.splits.push_back(0.0);
  out.splits.insert(out.splits.end(), uniq.begin(), uniq.end());
  out.splits.push_back(n);
  out.n = static_cast<int>(out.splits.size()) - 1;
  for (size_t j = 0; j + 1 < out.splits.size(); ++j) {
    const double a = out.splits[j], b = out.splits[j + 1];
    std::vector<PlanarPoint> q{internal::chain_point(ch, a)};
    for (size_t i = static_cast<size_t>(std::floor(a)) + 1; static_cast<double>(i) < b; ++i) {
      q.push_back(ch.p[i]);
    }
    q.push_back(internal::chain_point(ch, b));
    if (!internal::is_convex_arc(q)) out.certified = false;
  }
  out.self_intersections = 0;
  return out;
}

// Full pipeline for one connected curve: sub-spirals, then convex arcs.
// m counts self-intersections of the whole curve, a closed curve's closure
// point included.
inline ConvexDecomposition decompose_curve(const PlanarCurve& curve) {
  ConvexDecomposition out;
  out.n = 0;
  out.splits.clear();
  for (const PlanarCurve& sub : subspiral_split(curve)) {
    const ConvexDecomposition d = convex_decomposition(sub);
    out.n += d.n;
    out.certified = out.certified && d.certified;
  }
  out.self_intersections = self_intersection_count(curve);
  return out;
}

}  // namespace hpxcap

#endif  // HPXCAP_DECOMPOSITION_HPP_
