// SPDX-License-Identifier: Apache-2.0
#include "fbf/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fbf {

SaddleProblem::SaddleProblem(DenseMatrix m, Point a, Point b, BoxSet u_box,
                             BoxSet v_box)
    : m_(std::move(m)),
      a_(std::move(a)),
      b_(std::move(b)),
      u_box_(std::move(u_box)),
      v_box_(std::move(v_box)) {
  if (m_.rows() != a_.size() || m_.cols() != b_.size()) {
    throw UsageError("SaddleProblem: M must be dim(a) x dim(b)");
  }
  if (u_box_.dim() != a_.size() || v_box_.dim() != b_.size()) {
    throw UsageError("SaddleProblem: box dimensions must match a and b");
  }
  if (!m_.allFinite()) throw UsageError("SaddleProblem: non-finite M");
  require_finite(a_, "SaddleProblem a");
  require_finite(b_, "SaddleProblem b");
}

double SaddleProblem::gamma(const Point& u, const Point& v) const {
  require_same_dim(u, a_, "SaddleProblem::gamma u");
  require_same_dim(v, b_, "SaddleProblem::gamma v");
  return u.dot(m_ * v) + a_.dot(u) + b_.dot(v);
}

double SaddleProblem::coupling(const Point& x, const Point& y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw UsageError("SaddleProblem::coupling: dimension mismatch");
  }
  const Index m = u_dim();
  const Index n = v_dim();
  return gamma(y.head(m), x.tail(n)) - gamma(x.head(m), y.tail(n));
}

SaddleProblem example_problem() {
  DenseMatrix m(1, 1);
  m(0, 0) = 1.0;
  return SaddleProblem(m, Point::Ones(1), Point::Ones(1), BoxSet::cube(1, 0.0, 1.0),
                       BoxSet::cube(1, 0.0, 1.0));
}

Point example_solution() { return Point::Unit(2, 1); }

BepInstance build_saddle_bep(const SaddleProblem& sp,
                             const EquilibriumBifunction& upper) {
  const BoxSet k = sp.k();
  if (upper.dim() != k.dim()) {
    throw UsageError("build_saddle_bep: upper bifunction has dimension " +
                     std::to_string(upper.dim()) + ", expected " +
                     std::to_string(k.dim()));
  }
  const BoxSet& uk = upper.feasible_set();
  if (uk.lower() != k.lower() || uk.upper() != k.upper()) {
    throw UsageError("build_saddle_bep: upper bifunction must be posed on U x V");
  }
  return BepInstance(sp.op().as_monotone(), upper);
}

ExampleConjugates example_conjugates(double p, double q, double beta) {
  if (!(beta > 0.0)) throw UsageError("example_conjugates: beta must be > 0");
  const double s = 2.0 * p / beta;
  const double t = 2.0 * q / beta;
  ExampleConjugates c;
  c.first = p > beta ? s - 3.0 : -1.0;
  c.second = q > -0.5 * beta ? 1.0 + t : 0.0;
  c.sigma = t;
  return c;
}

SupremumEstimate fitzpatrick_grid(const SaddleProblem& sp, const Point& u,
                                  const Point& w, int grid) {
  const BoxSet k = sp.k();
  require_same_dim(u, k.lower(), "fitzpatrick_grid u");
  require_same_dim(w, k.lower(), "fitzpatrick_grid w");
  if (!k.contains(u, 1e-12)) throw UsageError("fitzpatrick_grid: u must lie in K");
  if (grid < 2) throw UsageError("fitzpatrick_grid: grid must be >= 2");

  SupremumEstimate est;
  est.exact = k.dim() <= 8;
  const std::vector<Point> pts = est.exact ? k.vertices() : k.grid(grid);
  est.value = -std::numeric_limits<double>::infinity();
  for (const Point& y : pts) est.value = std::max(est.value, w.dot(y) + sp.coupling(y, u));
  return est;
}

PartialSum condition_57_partial_sum(const Schedule& sched, double p, double q,
                                    long horizon, bool relative) {
  if (horizon < 1) throw UsageError("condition_57_partial_sum: horizon must be >= 1");
  auto summand = [&](long n) {
    const double beta = sched.beta(n);
    const double pn = relative ? p * beta : p;
    const double qn = relative ? q * beta : q;
    return sched.product(n) * example_conjugates(pn, qn, beta).term();
  };

  PartialSum out;
  bool all_zero = true;
  // Kahan summation keeps 1e6-term p-series accurate to ~1e-16 relative.
  double comp = 0.0;
  for (long n = 1; n <= horizon; ++n) {
    const double term = summand(n);
    if (term != 0.0) all_zero = false;
    const double yk = term - comp;
    const double tk = out.sum + yk;
    comp = (tk - out.sum) - yk;
    out.sum = tk;
  }
  const long n0 = horizon >= 10 ? horizon / 10 : 1;
  out.term_slope = horizon > n0 ? loglog_slope(n0, summand(n0), horizon, summand(horizon)) : 0.0;
  if (all_zero) {
    out.trend = Trend::vanishing;
  } else if (out.term_slope < -kSummableSlope) {
    out.trend = Trend::bounded;
  } else {
    out.trend = Trend::diverging;
  }
  return out;
}

std::vector<Point> grid_saddle_points(const SaddleProblem& sp, int grid, double tol) {
  const std::vector<Point> us = sp.u_box().grid(grid);
  const std::vector<Point> vs = sp.v_box().grid(grid);
  std::vector<Point> out;
  for (const Point& u : us) {
    for (const Point& v : vs) {
      const double here = sp.gamma(u, v);
      bool ok = true;
      for (const Point& w : vs) {
        if (sp.gamma(u, w) > here + tol) {
          ok = false;
          break;
        }
      }
      for (std::size_t i = 0; ok && i < us.size(); ++i) {
        if (sp.gamma(us[i], v) < here - tol) ok = false;
      }
      if (!ok) continue;
      Point x(sp.dim());
      x << u, v;
      out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace fbf
