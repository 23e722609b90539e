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

// Command-line front end: point generation, discrepancy runs, cap surveys
// and single-cap diagnostics. Reports are JSON, point clouds CSV or JSON.
// Exit codes: 0 ok, 2 bad arguments, 3 I/O failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "hpxcap/hpxcap.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;
constexpr int kMaxCliLevel = 12;
// Pixel adjacency tables grow as 12 * 4^level; surveys stop well before that hurts.
constexpr int kMaxSurveyLevel = 8;
const double kLengthBound = 5.0 + std::sqrt(2.0);
constexpr double kRoundedLengthBound = 6.42;
constexpr int kMaxConvexArcs = 36;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits always parse back to the same double.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json vec_json(const hpxcap::UnitVector& v) { return json::array({v.x, v.y, v.z}); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write failed for " + path);
}

int64_t intersection_bound_constant(int ell) {
  return static_cast<int64_t>(std::floor(2.0 * kLengthBound / std::sqrt(3.0) *
                                         std::sqrt(static_cast<double>(hpxcap::num_pixels(ell))))) +
         1000;
}

// ---- points -----------------------------------------------------------------

struct PointsArgs {
  int level = 0;
  bool jitter = false;
  uint64_t seed = 0;
  std::string format = "csv";
  std::string out;
};

int cmd_points(const PointsArgs& a) {
  using namespace hpxcap;
  const PointSet z = a.jitter ? jittered_points(a.level, a.seed) : healpix_point_set(a.level);
  std::string text;
  json rows = json::array();
  if (a.format == "csv") text = "s,k,level,r,c,phi,theta,x,y,z\n";
  for (size_t i = 0; i < z.size(); ++i) {
    const PixelIndex idx = pixel_from_ordinal(static_cast<int64_t>(i), a.level);
    const UnitVector& p = z.points[i];
    const SphericalAngles ang = a.jitter ? to_angles(p) : pixel_center(idx);
    if (a.format == "csv") {
      text += std::to_string(idx.s) + ',' + std::to_string(idx.k) + ',' + std::to_string(idx.ell) +
              ',' + std::to_string(idx.r) + ',' + std::to_string(idx.c) + ',' + num(ang.phi) + ',' +
              num(ang.theta) + ',' + num(p.x) + ',' + num(p.y) + ',' + num(p.z) + '\n';
    } else {
      rows.push_back({{"s", idx.s}, {"k", idx.k}, {"level", idx.ell}, {"r", idx.r}, {"c", idx.c},
                      {"phi", ang.phi}, {"theta", ang.theta}, {"x", p.x}, {"y", p.y}, {"z", p.z}});
    }
  }
  if (a.format == "json") {
    json doc = {{"label", z.label}, {"count", z.size()}, {"points", rows}};
    text = doc.dump(1) + "\n";
  }
  write_text(a.out, text);
  return kExitOk;
}

// ---- discrepancy ------------------------------------------------------------

struct DiscrepancyArgs {
  int level = 0;
  std::string mode = "exact";
  int64_t caps = 100000;
  uint64_t seed = 0;
  bool jitter = false;
};

int cmd_discrepancy(const DiscrepancyArgs& a) {
  using namespace hpxcap;
  const PointSet z = a.jitter ? jittered_points(a.level, a.seed) : healpix_point_set(a.level);
  const auto start = std::chrono::steady_clock::now();
  DiscrepancyReport r;
  if (a.mode == "exact") {
    if (z.size() > kExactSizeLimit) {
      throw UsageError("exact mode supports at most " + std::to_string(kExactSizeLimit) +
                       " points; level " + std::to_string(a.level) + " has " +
                       std::to_string(z.size()));
    }
    r = exact_discrepancy(z);
  } else {
    r = estimated_discrepancy(z, a.caps, a.seed);
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json doc = {{"level", a.level},
              {"points", z.label},
              {"n", z.size()},
              {"value", r.value},
              {"value_sqrt_n", r.value * std::sqrt(static_cast<double>(z.size()))},
              {"witness",
               {{"w", vec_json(r.witness.w)},
                {"t", r.witness.t},
                {"convention", r.closed ? "closed" : "open"}}},
              {"mode", a.mode == "exact" ? "exact" : "sample"},
              {"caps_examined", r.caps_examined},
              {"runtime_ms", ms}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

// ---- survey -----------------------------------------------------------------

struct SurveyArgs {
  int level = 1;
  int64_t caps = 1000;
  uint64_t seed = 0;
  std::string out;
};

json histogram(const std::map<int64_t, int64_t>& h) {
  json o = json::object();
  for (const auto& [k, v] : h) o[std::to_string(k)] = v;
  return o;
}

json check(const std::string& name, double observed, double bound) {
  return {{"name", name}, {"observed", observed}, {"bound", bound}, {"pass", observed <= bound}};
}

int cmd_survey(const SurveyArgs& a) {
  using namespace hpxcap;
  if (a.level > kMaxSurveyLevel) {
    throw UsageError("survey supports levels up to " + std::to_string(kMaxSurveyLevel));
  }
  std::map<int64_t, int64_t> h_count, h_zeros, h_n;
  double max_len = 0.0;
  int64_t max_count = 0, max_zeros = 0, max_n = 0, skipped = 0;
  for (int64_t i = 0; i < a.caps; ++i) {
    Rng rng(a.seed, static_cast<uint64_t>(i));
    const Cap cap = random_cap(rng);
    PlanarCurve curve = projected_cap_boundary(cap);
    const double len = curve_length(curve);
    const int64_t count = cap_pixel_intersection_count(cap, a.level);
    int64_t zeros = 0;
    try {
      zeros = curvature_zero_count(cap).total();
    } catch (const DegenerateCap&) {
      ++skipped;  // flat boundary; no curvature to change sign
    }
    const int64_t n = decompose_curve(curve).n;
    max_len = std::max(max_len, len);
    max_count = std::max(max_count, count);
    max_zeros = std::max(max_zeros, zeros);
    max_n = std::max(max_n, n);
    ++h_count[count];
    ++h_zeros[zeros];
    ++h_n[n];
  }
  const double bound = static_cast<double>(intersection_bound_constant(a.level));
  json doc = {
      {"level", a.level},
      {"caps", a.caps},
      {"seed", a.seed},
      {"maxima",
       {{"length", max_len}, {"intersections", max_count}, {"curvature_zeros", max_zeros},
        {"convex_arcs", max_n}}},
      {"histograms",
       {{"intersections", histogram(h_count)},
        {"curvature_zeros", histogram(h_zeros)},
        {"convex_arcs", histogram(h_n)}}},
      {"flat_caps", skipped},
      {"checks", json::array({check("length <= 5 + sqrt 2", max_len, kLengthBound),
                              check("length < 6.42", max_len, kRoundedLengthBound),
                              check("intersections <= 2(5 + sqrt 2)/sqrt 3 sqrt N + 1000",
                                    static_cast<double>(max_count), bound),
                              check("convex arcs <= 36", static_cast<double>(max_n), kMaxConvexArcs)})},
      {"equator_reference", int64_t{8} << a.level}};
  write_text(a.out, doc.dump(2) + "\n");
  return kExitOk;
}

// ---- cap --------------------------------------------------------------------

struct CapArgs {
  int level = 1;
  double phi = 0.0;
  double theta = 0.0;
  double height = 0.0;
};

int cmd_cap(const CapArgs& a) {
  using namespace hpxcap;
  if (a.level > kMaxSurveyLevel) {
    throw UsageError("cap supports levels up to " + std::to_string(kMaxSurveyLevel));
  }
  if (!(std::fabs(a.height) < 1.0)) throw UsageError("--height must lie in (-1, 1)");
  if (!(a.theta >= 0.0 && a.theta <= kPi)) throw UsageError("--theta must lie in [0, pi]");
  const Cap cap = make_cap(a.phi, a.theta, a.height);
  PlanarCurve curve = projected_cap_boundary(cap);
  const ConvexDecomposition d = decompose_curve(curve);
  json zeros = nullptr;
  try {
    const ZeroCount zc = curvature_zero_count(cap);
    zeros = {{"belt", zc.belt()}, {"north", zc.north()}, {"south", zc.south()}, {"total", zc.total()}};
  } catch (const DegenerateCap&) {
    zeros = {{"belt", 0}, {"north", 0}, {"south", 0}, {"total", 0}, {"flat", true}};
  }
  const PointSet z = healpix_point_set(a.level);
  json doc = {
      {"level", a.level},
      {"cap", {{"w", vec_json(cap.w)}, {"t", cap.t}, {"area_fraction", cap_area_fraction(cap)}}},
      {"length", curve_length(curve)},
      {"closed_curve", curve.closed()},
      {"intersections",
       {{"closed", cap_pixel_intersection_count(cap, a.level, {TouchConvention::kClosed})},
        {"partition", cap_pixel_intersection_count(cap, a.level, {TouchConvention::kPartition})},
        {"open", cap_pixel_intersection_count(cap, a.level, {TouchConvention::kOpen})}}},
      {"curvature_zeros", zeros},
      {"convex_arcs", d.n},
      {"self_intersections", d.self_intersections},
      {"local_discrepancy",
       {{"closed", local_discrepancy(z, cap, true)}, {"open", local_discrepancy(z, cap, false)}}}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HEALPix point sets, projected cap boundaries and spherical cap discrepancy"};
  app.require_subcommand(1);
  auto level_check = CLI::Range(0, kMaxCliLevel);

  PointsArgs pa;
  auto* points = app.add_subcommand("points", "Write HEALPix or jittered points");
  points->add_option("--level", pa.level, "Resolution level")->required()->check(level_check);
  points->add_flag("--jitter", pa.jitter, "One uniform random point per pixel instead of centres");
  points->add_option("--seed", pa.seed, "Seed for --jitter");
  points->add_option("--format", pa.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  points->add_option("--out", pa.out, "Output path")->required();

  DiscrepancyArgs da;
  auto* disc = app.add_subcommand("discrepancy", "Spherical cap discrepancy of a point set (JSON to stdout)");
  disc->add_option("--level", da.level, "Resolution level")->required()->check(level_check);
  disc->add_option("--mode", da.mode, "exact: full candidate enumeration; sample: random caps")
      ->required()
      ->check(CLI::IsMember({"exact", "sample"}));
  disc->add_option("--caps", da.caps, "Random caps in sample mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  disc->add_option("--seed", da.seed, "Seed for sampling and --jitter");
  disc->add_flag("--jitter", da.jitter, "Use jittered points");

  SurveyArgs sa;
  auto* survey = app.add_subcommand("survey", "Statistics of random caps against the known bounds");
  survey->add_option("--level", sa.level, "Resolution level")->required()->check(level_check);
  survey->add_option("--caps", sa.caps, "Number of random caps")->required()->check(CLI::PositiveNumber);
  survey->add_option("--seed", sa.seed, "Seed")->required();
  survey->add_option("--out", sa.out, "Output path (JSON)")->required();

  CapArgs ca;
  auto* capc = app.add_subcommand("cap", "Diagnostics for one cap C(w(phi, theta), height)");
  capc->add_option("--level", ca.level, "Resolution level")->required()->check(level_check);
  capc->add_option("--phi", ca.phi, "Centre azimuth")->required();
  capc->add_option("--theta", ca.theta, "Centre polar angle")->required();
  capc->add_option("--height", ca.height, "Cap height t")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArgs;
  }
  try {
    if (*points) return cmd_points(pa);
    if (*disc) return cmd_discrepancy(da);
    if (*survey) return cmd_survey(sa);
    if (*capc) return cmd_cap(ca);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const hpxcap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  return kExitBadArgs;
}
