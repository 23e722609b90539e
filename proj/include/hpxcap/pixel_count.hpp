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

// Pixels met by a cap boundary, located on the sphere.

#ifndef HPXCAP_PIXEL_COUNT_HPP_
#define HPXCAP_PIXEL_COUNT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "hpxcap/errors.hpp"
#include "hpxcap/geometry.hpp"
#include "hpxcap/lattice.hpp"
#include "hpxcap/tessellation.hpp"

namespace hpxcap {

inline constexpr int kPixelRefineDepth = 40;
// |<v, w> - t| below this puts a pixel vertex on the cap boundary.
inline constexpr double kVertexOnBoundary = 1e-12;
// Circle-angle span below which vertex-adjacent samples stop refining.
inline constexpr double kVertexSpan = 1e-10;

struct PixelCountOptions {
  TouchConvention convention = TouchConvention::kClosed;
  int max_depth = kPixelRefineDepth;
};

// Ordinals of the pixels met by the boundary circle of `cap`. The circle is
// sampled at an irrational phase so samples avoid pixel vertices; a span
// between consecutive samples is bisected until its ends lie in one pixel or
// it is shorter than kVertexSpan. Vertices on the circle then contribute
// their owner (partition) or every incident pixel (closed).
inline std::vector<int64_t> cap_boundary_pixels(const Cap& cap, int ell,
                                                PixelCountOptions opt = {}) {
  if (!(std::fabs(cap.t) < 1.0)) throw DegenerateCap("cap height must lie in (-1, 1)");
  const PixelTopology& topo = PixelTopology::for_level(ell);
  const CapFrame f = cap_frame(cap);
  const int64_t L = level_side(ell);
  const int n0 = static_cast<int>(std::max<int64_t>(256, 256 * L));
  const double phase = 0.3183098861837907;
  std::unordered_set<int64_t> hit;
  auto locate = [&](double psi) {
    return pixel_ordinal(point_to_pixel(cap_circle_point(cap, f, psi), ell));
  };
  struct Span {
    double a, b;
    int64_t pa, pb;
    int depth;
  };
  std::vector<Span> stack;
  std::vector<int64_t> samples(n0);
  for (int i = 0; i < n0; ++i) {
    samples[i] = locate(phase + kTwoPi * i / n0);
    hit.insert(samples[i]);
  }
  for (int i = 0; i < n0; ++i) {
    const double a = phase + kTwoPi * i / n0;
    stack.push_back({a, a + kTwoPi / n0, samples[i], samples[(i + 1) % n0], 0});
  }
  while (!stack.empty()) {
    const Span s = stack.back();
    stack.pop_back();
    // Ends in different pixels are refined until the crossing is pinned to
    // kVertexSpan: stopping at side-adjacent ends would miss a third pixel
    // whose corner the arc cuts.
    if (s.pa == s.pb || s.depth >= opt.max_depth || s.b - s.a < kVertexSpan) continue;
    const double m = 0.5 * (s.a + s.b);
    const int64_t pm = locate(m);
    hit.insert(pm);
    stack.push_back({s.a, m, s.pa, pm, s.depth + 1});
    stack.push_back({m, s.b, pm, s.pb, s.depth + 1});
  }
  if (opt.convention != TouchConvention::kOpen) {
    std::unordered_set<int> checked;
    std::vector<int64_t> extra;
    for (int64_t pix : hit) {
      for (int v : topo.vertices_of(pix)) {
        if (!checked.insert(v).second) continue;
        const UnitVector& u = topo.vertex(v);
        if (std::fabs(dot(u, cap.w) - cap.t) >= kVertexOnBoundary) continue;
        if (opt.convention == TouchConvention::kClosed) {
          for (int64_t q : topo.pixels_at(v)) extra.push_back(q);
        } else {
          extra.push_back(topo.owner(v));
        }
      }
    }
    hit.insert(extra.begin(), extra.end());
  }
  std::vector<int64_t> out(hit.begin(), hit.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline int64_t cap_pixel_intersection_count(const Cap& cap, int ell, PixelCountOptions opt = {}) {
  return static_cast<int64_t>(cap_boundary_pixels(cap, ell, opt).size());
}

}  // namespace hpxcap

#endif  // HPXCAP_PIXEL_COUNT_HPP_
