// Copyright 2026 The tfqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tfq/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>

namespace tfq::oracle {
namespace {

std::vector<double> panels(double a, double b, std::vector<double> breaks) {
  std::vector<double> pts{a};
  std::sort(breaks.begin(), breaks.end());
  for (double x : breaks) {
    if (x > pts.back() && x < b) pts.push_back(x);
  }
  pts.push_back(b);
  return pts;
}

using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;

struct Segment {
  double a;
  double b;
  double est;
  double err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

// Global adaptive bisection: always split the worst segment, stop when the
// summed error meets tol * int |f| (or rounding level, or the budget).
double integrate_panels(const RealFn& f, const std::vector<double>& pts,
                        double tol) {
  constexpr int kMaxSplits = 20000;
  std::priority_queue<Segment> heap;
  double l1 = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    double li = 0.0;
    const double est = Rule::integrate(f, pts[i], pts[i + 1], 0, 0.0, &err, &li);
    heap.push({pts[i], pts[i + 1], est, err});
    l1 += li;
    total_err += err;
  }
  const double goal = std::max(tol * l1, 256.0 * std::numeric_limits<double>::epsilon() * l1);
  for (int it = 0; it < kMaxSplits && total_err > goal && !heap.empty(); ++it) {
    Segment s = heap.top();
    heap.pop();
    const double m = 0.5 * (s.a + s.b);
    double el = 0.0;
    double er = 0.0;
    const double l = Rule::integrate(f, s.a, m, 0, 0.0, &el);
    const double r = Rule::integrate(f, m, s.b, 0, 0.0, &er);
    total_err += el + er - s.err;
    heap.push({s.a, m, l, el});
    heap.push({m, s.b, r, er});
  }
  double acc = 0.0;
  while (!heap.empty()) {
    acc += heap.top().est;
    heap.pop();
  }
  return acc;
}

}  // namespace

double integrate(const RealFn& f, double a, double b,
                 std::vector<double> breaks, double tol) {
  return integrate_panels(f, panels(a, b, std::move(breaks)), tol);
}

cplx integrate_complex(const ComplexFn& f, double a, double b,
                       std::vector<double> breaks, double tol) {
  auto pts = panels(a, b, std::move(breaks));
  const double re = integrate_panels([&](double x) { return f(x).real(); }, pts, tol);
  const double im = integrate_panels([&](double x) { return f(x).imag(); }, pts, tol);
  return {re, im};
}

std::vector<double> lattice_breaks(double a, double b, double origin,
                                   double step) {
  std::vector<double> out;
  double half = 0.5 * step;
  double k0 = std::ceil((a - origin) / half);
  for (double k = k0;; k += 1.0) {
    double x = origin + k * half;
    if (x >= b) break;
    if (x > a) out.push_back(x);
  }
  return out;
}

}  // namespace tfq::oracle
