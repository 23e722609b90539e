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

// Spherical cap discrepancy of finite point sets.
//
// The local discrepancy of Z for the cap C(w, t) is |#(Z in C)/N - (1 - t)/2|.
// Its supremum over caps is attained in the limit by caps whose boundary is
// pinned by at most three points, so the exact solver enumerates centres
// {+-z_i}, {+-normalize(z_i + z_j)} and {+-normalize((z_i - z_j) x (z_i - z_k))}
// and, per centre, every height t = <w, z_i> under both the closed and the
// open membership rule.

#ifndef HPXCAP_DISCREPANCY_HPP_
#define HPXCAP_DISCREPANCY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hpxcap/errors.hpp"
#include "hpxcap/geometry.hpp"
#include "hpxcap/rng.hpp"
#include "hpxcap/tessellation.hpp"

namespace hpxcap {

struct PointSet {
  std::vector<UnitVector> points;
  std::string label;

  size_t size() const { return points.size(); }
};

inline PointSet healpix_point_set(int ell) {
  PointSet z;
  z.label = "healpix ell=" + std::to_string(ell);
  for (const SphericalAngles& a : healpix_points(ell)) z.points.push_back(to_cartesian(a));
  return z;
}

enum class DiscrepancyMode { kExact, kEstimate };

struct DiscrepancyReport {
  double value = 0.0;
  Cap witness{kNorthPole, -1.0};
  bool closed = true;  // membership rule under which the witness attains value
  DiscrepancyMode mode = DiscrepancyMode::kExact;
  int64_t caps_examined = 0;
};

inline double local_discrepancy(const PointSet& z, const Cap& c, bool closed = true) {
  if (z.points.empty()) throw DomainError("local discrepancy of an empty point set");
  int64_t count = 0;
  for (const UnitVector& p : z.points) count += cap_contains(c, p, closed) ? 1 : 0;
  const double n = static_cast<double>(z.points.size());
  return std::fabs(static_cast<double>(count) / n - cap_area_fraction(c));
}

inline constexpr size_t kExactSizeLimit = 256;

namespace internal {

// Running best over (w, t, closed); a strictly larger value replaces the
// incumbent, so the first maximiser in enumeration order wins.
struct Best {
  double value = -1.0;
  Cap cap{kNorthPole, -1.0};
  bool closed = true;
  int64_t examined = 0;

  void offer(double v, const UnitVector& w, double t, bool cl) {
    if (v > value) {
      value = v;
      cap = Cap{w, t};
      closed = cl;
    }
  }
};

// Scans every height for centre w and for -w from one sort of the dot
// products. With d sorted descending and a group of equal values d_g, the
// closed cap at t = d_g holds every point down to the group, the open cap
// every point above it. Both formulas reproduce local_discrepancy exactly
// because dot(p, -w) == -dot(p, w) in floating point.
inline void height_scan(const std::vector<UnitVector>& pts, const UnitVector& w,
                        std::vector<double>& d, Best& best) {
  const size_t n = pts.size();
  const double nn = static_cast<double>(n);
  d.resize(n);
  for (size_t i = 0; i < n; ++i) d[i] = dot(pts[i], w);
  std::sort(d.begin(), d.end(), std::greater<double>());
  const UnitVector mw = -w;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && d[j] == d[i]) ++j;
    const double t = d[i];
    // Centre w: closed count j, open count i.
    best.offer(std::fabs(static_cast<double>(j) / nn - 0.5 * (1.0 - t)), w, t, true);
    best.offer(std::fabs(static_cast<double>(i) / nn - 0.5 * (1.0 - t)), w, t, false);
    // Centre -w at height -t: closed count n - i, open count n - j.
    best.offer(std::fabs(static_cast<double>(n - i) / nn - 0.5 * (1.0 + t)), mw, -t, true);
    best.offer(std::fabs(static_cast<double>(n - j) / nn - 0.5 * (1.0 + t)), mw, -t, false);
    best.examined += 4;
    i = j;
  }
}

inline bool usable_axis(const UnitVector& v, UnitVector& out) {
  const double len = norm(v);
  if (!(len > 1e-12)) return false;
  out = UnitVector{v.x / len, v.y / len, v.z / len};
  return true;
}

inline void finish(const PointSet& z, const Best& best, DiscrepancyReport& r) {
  r.witness = best.cap;
  r.closed = best.closed;
  r.caps_examined = best.examined;
  r.value = std::max(0.0, best.value);
  // The scan uses the same arithmetic as local_discrepancy; report its value.
  if (best.value >= 0.0) r.value = local_discrepancy(z, best.cap, best.closed);
}

}  // namespace internal

inline DiscrepancyReport exact_discrepancy(const PointSet& z, size_t limit = kExactSizeLimit) {
  const size_t n = z.points.size();
  if (n == 0) throw DomainError("discrepancy of an empty point set");
  if (n > limit) {
    throw SizeLimit("exact mode supports at most " + std::to_string(limit) + " points, got " +
                    std::to_string(n));
  }
  const auto& p = z.points;
  internal::Best best;
  std::vector<double> d;
  // Whole sphere and empty cap: both have local discrepancy 0.
  best.offer(0.0, kNorthPole, -1.0, true);
  UnitVector w;
  for (size_t i = 0; i < n; ++i) {
    internal::height_scan(p, p[i], d, best);
    for (size_t j = i + 1; j < n; ++j) {
      const UnitVector sum{p[i].x + p[j].x, p[i].y + p[j].y, p[i].z + p[j].z};
      if (internal::usable_axis(sum, w)) internal::height_scan(p, w, d, best);
      const UnitVector dij{p[i].x - p[j].x, p[i].y - p[j].y, p[i].z - p[j].z};
      for (size_t k = j + 1; k < n; ++k) {
        const UnitVector dik{p[i].x - p[k].x, p[i].y - p[k].y, p[i].z - p[k].z};
        if (internal::usable_axis(cross(dij, dik), w)) internal::height_scan(p, w, d, best);
      }
    }
  }
  DiscrepancyReport r;
  r.mode = DiscrepancyMode::kExact;
  internal::finish(z, best, r);
  return r;
}

inline constexpr int kScannedCentres = 100;

// Lower bound on the discrepancy: M random caps, then full height scans at
// the centres of the best 100 of them and at both poles.
inline DiscrepancyReport estimated_discrepancy(const PointSet& z, int64_t m, uint64_t seed) {
  if (z.points.empty()) throw DomainError("discrepancy of an empty point set");
  if (m < 1) throw DomainError("estimate needs at least one cap");
  internal::Best best;
  best.offer(0.0, kNorthPole, -1.0, true);
  std::vector<std::pair<double, int64_t>> ranked;
  ranked.reserve(static_cast<size_t>(m));
  std::vector<UnitVector> centres;
  centres.reserve(static_cast<size_t>(m));
  for (int64_t i = 0; i < m; ++i) {
    Rng rng(seed, static_cast<uint64_t>(i));
    const Cap c = random_cap(rng);
    const double v = local_discrepancy(z, c, true);
    best.offer(v, c.w, c.t, true);
    ++best.examined;
    ranked.push_back({v, i});
    centres.push_back(c.w);
  }
  const size_t keep = std::min<size_t>(kScannedCentres, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                    [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first > b.first : a.second < b.second;
                    });
  std::vector<double> d;
  for (size_t i = 0; i < keep; ++i) internal::height_scan(z.points, centres[ranked[i].second], d, best);
  internal::height_scan(z.points, kNorthPole, d, best);
  DiscrepancyReport r;
  r.mode = DiscrepancyMode::kEstimate;
  internal::finish(z, best, r);
  return r;
}

// Cap at the north pole of height -1/N: it holds the northern points and the
// whole equator ring, slightly more than half of H_N.
inline Cap equator_cap(int ell) { return Cap{kNorthPole, -1.0 / static_cast<double>(num_pixels(ell))}; }

inline double equator_cap_discrepancy(int ell) {
  check_level(ell);
  return local_discrepancy(healpix_point_set(ell), equator_cap(ell), true);
}

// Number of pixel centres on the equator, 4L.
inline int64_t equator_point_count(int ell) {
  int64_t e = 0;
  for (const SphericalAngles& a : healpix_points(ell)) e += std::fabs(std::cos(a.theta)) < 1e-12 ? 1 : 0;
  return e;
}

// One uniform point per pixel: uniform in the pixel's projected square,
// mapped back to the sphere. Area preservation makes it uniform on the pixel.
// Pixel i draws from its own stream, so the set is independent of order.
inline PointSet jittered_points(int ell, uint64_t seed) {
  check_level(ell);
  const int64_t n = num_pixels(ell);
  const double L = static_cast<double>(level_side(ell));
  PointSet z;
  z.label = "jitter ell=" + std::to_string(ell) + " seed=" + std::to_string(seed);
  z.points.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    const PixelIndex idx = pixel_from_ordinal(i, ell);
    const LocalCell cell = local_cell(idx);
    Rng rng(seed, static_cast<uint64_t>(i));
    // Open unit interval: the point never lands on the pixel boundary.
    const double u1 = (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
    const PlanarPoint q = facet_point(idx.s, idx.k, (static_cast<double>(cell.p) + u1) / L,
                                      (static_cast<double>(cell.q) + u2) / L);
    z.points.push_back(to_cartesian(facet_unproject(idx.s, idx.k, q)));
  }
  return z;
}

inline PointSet uniform_points(int64_t n, uint64_t seed) {
  PointSet z;
  z.label = "uniform n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  for (int64_t i = 0; i < n; ++i) {
    Rng rng(seed, static_cast<uint64_t>(i));
    z.points.push_back(random_unit_vector(rng));
  }
  return z;
}

enum class SlopeSource { kHealpix, kJittered, kUniform };

struct SlopeOptions {
  SlopeSource source = SlopeSource::kJittered;
  int64_t estimate_caps = 100000;
  size_t exact_limit = kExactSizeLimit;
};

struct SlopePoint {
  int ell = 0;
  int64_t n = 0;
  double mean_log_d = 0.0;
  bool exact = true;
};

struct SlopeResult {
  double slope = 0.0;
  std::vector<SlopePoint> points;
};

inline double discrepancy_auto(const PointSet& z, const SlopeOptions& opt, uint64_t seed, bool& exact) {
  exact = z.size() <= opt.exact_limit;
  return exact ? exact_discrepancy(z, opt.exact_limit).value
               : estimated_discrepancy(z, opt.estimate_caps, seed).value;
}

// Least-squares slope of the trial mean of log D against log N.
inline SlopeResult jitter_slope_experiment(int ell_lo, int ell_hi, int trials, uint64_t seed,
                                           const SlopeOptions& opt = {}) {
  if (ell_hi < ell_lo || trials < 1) throw DomainError("empty slope experiment");
  SlopeResult out;
  for (int ell = ell_lo; ell <= ell_hi; ++ell) {
    SlopePoint sp;
    sp.ell = ell;
    sp.n = num_pixels(ell);
    // Deterministic sets take one trial; random sets are averaged.
    const int reps = opt.source == SlopeSource::kHealpix ? 1 : trials;
    double acc = 0.0;
    for (int tr = 0; tr < reps; ++tr) {
      const uint64_t s = splitmix64(seed ^ splitmix64((static_cast<uint64_t>(ell) << 32) + tr));
      PointSet z;
      switch (opt.source) {
        case SlopeSource::kHealpix: z = healpix_point_set(ell); break;
        case SlopeSource::kJittered: z = jittered_points(ell, s); break;
        case SlopeSource::kUniform: z = uniform_points(sp.n, s); break;
      }
      bool exact = true;
      acc += std::log(discrepancy_auto(z, opt, splitmix64(s), exact));
      sp.exact = exact;
    }
    sp.mean_log_d = acc / reps;
    out.points.push_back(sp);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(out.points.size());
  for (const SlopePoint& sp : out.points) {
    const double x = std::log(static_cast<double>(sp.n));
    sx += x;
    sy += sp.mean_log_d;
    sxx += x * x;
    sxy += x * sp.mean_log_d;
  }
  const double den = k * sxx - sx * sx;
  out.slope = den > 0 ? (k * sxy - sx * sy) / den : 0.0;
  return out;
}

}  // namespace hpxcap

#endif  // HPXCAP_DISCREPANCY_HPP_
