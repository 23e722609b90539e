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

// Dense real polynomials and sign-change root isolation on an interval.

#ifndef HPXCAP_POLYNOMIAL_HPP_
#define HPXCAP_POLYNOMIAL_HPP_

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "hpxcap/errors.hpp"

namespace hpxcap {

// Coefficients in ascending order: a[0] + a[1] x + ...
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> a) : a_(a) {}
  explicit Polynomial(std::vector<double> a) : a_(std::move(a)) {}

  const std::vector<double>& coefficients() const { return a_; }
  int degree() const {
    for (int i = static_cast<int>(a_.size()) - 1; i >= 0; --i) {
      if (a_[i] != 0.0) return i;
    }
    return -1;
  }
  bool is_zero() const { return degree() < 0; }

  double operator()(double x) const {
    double s = 0.0;
    for (auto it = a_.rbegin(); it != a_.rend(); ++it) s = s * x + *it;
    return s;
  }

  Polynomial derivative() const {
    std::vector<double> d;
    for (size_t i = 1; i < a_.size(); ++i) d.push_back(static_cast<double>(i) * a_[i]);
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> r(std::max(p.a_.size(), q.a_.size()), 0.0);
    for (size_t i = 0; i < p.a_.size(); ++i) r[i] += p.a_[i];
    for (size_t i = 0; i < q.a_.size(); ++i) r[i] += q.a_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    return p + (-1.0) * q;
  }
  friend Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> r = p.a_;
    for (double& v : r) v *= s;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.a_.empty() || q.a_.empty()) return Polynomial();
    std::vector<double> r(p.a_.size() + q.a_.size() - 1, 0.0);
    for (size_t i = 0; i < p.a_.size(); ++i) {
      for (size_t j = 0; j < q.a_.size(); ++j) r[i + j] += p.a_[i] * q.a_[j];
    }
    return Polynomial(std::move(r));
  }

  // Drops leading coefficients below rel * max|a_i|.
  Polynomial trimmed(double rel = 1e-14) const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    std::vector<double> r = a_;
    while (!r.empty() && std::fabs(r.back()) <= rel * m) r.pop_back();
    return Polynomial(std::move(r));
  }

 private:
  std::vector<double> a_;
};

namespace internal {

inline double bisect_root(const Polynomial& p, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::fabs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Critical points of p in (lo, hi), found recursively from p'.
inline std::vector<double> monotone_breaks(const Polynomial& p, double lo, double hi);

inline std::vector<double> sign_roots(const Polynomial& p, double lo, double hi) {
  std::vector<double> pts = monotone_breaks(p, lo, hi);
  std::vector<double> roots;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    const double fa = p(a);
    const double fb = p(b);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) roots.push_back(bisect_root(p, a, b));
  }
  return roots;
}

inline std::vector<double> monotone_breaks(const Polynomial& p, double lo, double hi) {
  std::vector<double> pts{lo};
  const Polynomial d = p.derivative().trimmed();
  if (d.degree() >= 1) {
    for (double r : sign_roots(d, lo, hi)) {
      if (r > pts.back() && r < hi) pts.push_back(r);
    }
  }
  pts.push_back(hi);
  return pts;
}

}  // namespace internal

// Roots in [lo, hi] at which p changes sign, ascending. Tangential zeros are
// not reported. Throws DomainError for the zero polynomial.
inline std::vector<double> sign_change_roots(const Polynomial& p, double lo, double hi) {
  const Polynomial q = p.trimmed();
  if (q.is_zero()) throw DomainError("zero polynomial has no isolated roots");
  if (!(hi > lo) || q.degree() == 0) return {};
  std::vector<double> roots = internal::sign_roots(q, lo, hi);
  // Near-coincident pairs straddle a double root: no net sign change.
  std::vector<double> out;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (i + 1 < roots.size() && roots[i + 1] - roots[i] < 1e-9) {
      ++i;
      continue;
    }
    out.push_back(roots[i]);
  }
  return out;
}

}  // namespace hpxcap

#endif  // HPXCAP_POLYNOMIAL_HPP_
