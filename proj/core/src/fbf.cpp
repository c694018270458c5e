// SPDX-License-Identifier: Apache-2.0
#include "fbf/fbf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fbf {

BepInstance::BepInstance(MonotoneMap lower, EquilibriumBifunction upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.dim() != upper_.dim()) {
    throw UsageError("BepInstance: dim(B) = " + std::to_string(lower_.dim()) +
                     " but dim(K) = " + std::to_string(upper_.dim()));
  }
}

double BepInstance::f(const Point& x, const Point& y) const {
  require_same_dim(x, y, "BepInstance::f");
  return lower_(x).dot(y - x);
}

StepResult fbf_step(const BepInstance& inst, const Point& x, double lambda,
                    double beta) {
  if (!(lambda > 0.0) || !(beta > 0.0)) {
    throw UsageError("fbf_step: lambda and beta must be > 0");
  }
  const double lb = lambda * beta;
  if (!(lb * inst.lipschitz() < 1.0)) {
    throw UsageError("fbf_step: step bound lambda*beta*L < 1 violated (" +
                     std::to_string(lb * inst.lipschitz()) + ")");
  }
  require_same_dim(x, inst.k().lower(), "fbf_step");
  StepResult r;
  r.bx = inst.lower()(x);
  r.y = inst.upper().resolvent(lambda, x - lb * r.bx);
  r.by = inst.lower()(r.y);
  r.x_next = r.y + lb * (r.bx - r.by);
  return r;
}

double lower_fitzpatrick_at_zero(const BepInstance& inst, const Point& u,
                                 int grid) {
  require_same_dim(u, inst.k().lower(), "lower_fitzpatrick_at_zero");
  const BoxSet& k = inst.k();
  double best = inst.f(u, u);
  for (const Point& y : k.grid(grid)) best = std::max(best, inst.f(y, u));
  if (k.dim() <= 12) {
    for (const Point& y : k.vertices()) best = std::max(best, inst.f(y, u));
  }
  return best;
}

double prop31_slack(const BepInstance& inst, const Point& u, const Point& x_n,
                    const Point& y_n, const Point& x_next, double lambda,
                    double beta, double fitz_zero) {
  const double lb = lambda * beta;
  const double lbl = lb * inst.lipschitz();
  if (!(lbl < 1.0)) {
    throw UsageError("prop31_slack: step bound lambda*beta*L < 1 violated");
  }
  const double a_n = (x_n - u).squaredNorm();
  const double a_next = (x_next - u).squaredNorm();
  const double lhs = a_next - a_n + lb * inst.f(u, y_n);
  const double rhs = -(1.0 - lbl * lbl) * (x_n - y_n).squaredNorm() + lb * fitz_zero;
  return rhs - lhs;
}

double prop31_slack(const BepInstance& inst, const Point& u, const Point& x_n,
                    const Point& y_n, const Point& x_next, double lambda,
                    double beta) {
  return prop31_slack(inst, u, x_n, y_n, x_next, lambda, beta,
                      lower_fitzpatrick_at_zero(inst, u));
}

IterationTrace run_fbf(const BepInstance& inst, const Point& x0,
                       const Schedule& sched, const StoppingRule& stop,
                       const std::optional<Point>& reference) {
  require_same_dim(x0, inst.k().lower(), "run_fbf");
  require_finite(x0, "run_fbf x0");
  if (stop.max_iter < 1) throw UsageError("run_fbf: max_iter must be >= 1");
  sched.validate_step_bound(inst.lipschitz(), stop.max_iter);

  IterationTrace trace;
  trace.min_slack = std::numeric_limits<double>::infinity();
  if (!inst.k().contains(x0, 1e-12)) {
    trace.warnings.push_back("x0 lies outside K");
  }
  double fitz_zero = 0.0;
  if (reference) {
    require_same_dim(*reference, x0, "run_fbf reference");
    fitz_zero = lower_fitzpatrick_at_zero(inst, *reference);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();

  Point x = x0;
  trace.records.reserve(static_cast<std::size_t>(std::min(stop.max_iter, 100'000L)));
  for (long n = 1; n <= stop.max_iter; ++n) {
    const double lambda = sched.lambda(n);
    const double beta = sched.beta(n);
    StepResult s = fbf_step(inst, x, lambda, beta);
    if (!s.x_next.allFinite()) {
      throw ConvergenceError("run_fbf: iterate became non-finite", x, nan, n);
    }

    IterationRecord rec;
    rec.n = n;
    rec.lambda = lambda;
    rec.beta = beta;
    rec.gap = (x - s.y).norm();
    rec.step = (s.x_next - x).norm();
    if (reference) {
      rec.dist_ref = (x - *reference).norm();
      rec.slack = prop31_slack(inst, *reference, x, s.y, s.x_next, lambda, beta,
                               fitz_zero);
      trace.min_slack = std::min(trace.min_slack, rec.slack);
    } else {
      rec.dist_ref = nan;
      rec.slack = nan;
    }
    rec.x = std::move(x);
    rec.y = std::move(s.y);
    const bool done = stop.tol >= 0.0 && rec.step <= stop.tol && rec.gap <= stop.tol;
    trace.records.push_back(std::move(rec));
    x = std::move(s.x_next);
    if (done) {
      trace.converged = true;
      break;
    }
  }
  trace.final_point = x;
  return trace;
}

GapSummability gap_summability(const IterationTrace& trace) {
  GapSummability s;
  const std::size_t count = trace.records.size();
  const std::size_t tail_start = count - count / 10;
  for (std::size_t i = 0; i < count; ++i) {
    const double g2 = trace.records[i].gap * trace.records[i].gap;
    s.total += g2;
    if (i >= tail_start) s.tail += g2;
  }
  return s;
}

}  // namespace fbf
