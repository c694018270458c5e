// SPDX-License-Identifier: Apache-2.0
#include "fbf/dynamics.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace fbf {

Point h_map(const BepInstance& inst, double lambda, double beta, const Point& x) {
  StepResult s = fbf_step(inst, x, lambda, beta);
  return s.x_next - x;
}

SampledExtreme lipschitz_h_sample(const BepInstance& inst, double lambda,
                                  double beta, long samples, std::uint64_t seed) {
  if (samples < 1) throw UsageError("lipschitz_h_check: samples must be >= 1");
  const BoxSet region = sampling_region(inst.k());
  std::mt19937_64 rng(seed);
  SampledExtreme worst{0.0, {}, {}};
  for (long s = 0; s < samples; ++s) {
    const Point x = region.sample(rng);
    const Point xp = region.sample(rng);
    const double dx = (x - xp).norm();
    if (dx == 0.0) continue;
    const double ratio =
        (h_map(inst, lambda, beta, x) - h_map(inst, lambda, beta, xp)).norm() / dx;
    if (ratio > worst.value || worst.x.size() == 0) worst = {ratio, x, xp};
  }
  return worst;
}

double lipschitz_h_check(const BepInstance& inst, double lambda, double beta,
                         long samples, std::uint64_t seed) {
  return lipschitz_h_sample(inst, lambda, beta, samples, seed).value;
}

std::string to_string(Integrator m) {
  return m == Integrator::euler ? "euler" : "rk4";
}

Integrator parse_integrator(const std::string& name) {
  if (name == "euler") return Integrator::euler;
  if (name == "rk4") return Integrator::rk4;
  throw UsageError("unknown integrator '" + name + "' (expected euler or rk4)");
}

namespace {

Point field(const BepInstance& inst, const ScheduleFn& sched, double t,
            const Point& x) {
  return h_map(inst, sched.lambda(t), sched.beta(t), x);
}

void record(const BepInstance& inst, const ScheduleFn& sched, double t,
            const Point& x, const std::optional<Point>& reference,
            TrajectoryTrace& out) {
  const double lambda = sched.lambda(t);
  const double beta = sched.beta(t);
  StepResult s = fbf_step(inst, x, lambda, beta);
  out.t.push_back(t);
  out.norm_h.push_back((s.x_next - x).norm());
  out.gap.push_back((x - s.y).norm());
  out.dist_ref.push_back(reference ? (x - *reference).norm()
                                   : std::numeric_limits<double>::quiet_NaN());
  out.x.push_back(x);
  out.y.push_back(std::move(s.y));
}

}  // namespace

TrajectoryTrace integrate(const BepInstance& inst, const Point& x0,
                          const ScheduleFn& sched, Integrator method, double step,
                          double t_end, const std::optional<Point>& reference) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw UsageError("integrate: step must be finite and > 0");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw UsageError("integrate: t_end must be finite and > 0");
  }
  require_same_dim(x0, inst.k().lower(), "integrate");
  require_finite(x0, "integrate x0");
  if (reference) require_same_dim(*reference, x0, "integrate reference");

  // Rounding t_end / step guards against 200 / 0.05 landing just below 4000.
  const double ratio = t_end / step;
  const long steps = static_cast<long>(std::floor(ratio + 1e-9 * std::max(1.0, ratio)));

  TrajectoryTrace out;
  Point x = x0;
  try {
    for (long k = 0;; ++k) {
      const double t = static_cast<double>(k) * step;
      record(inst, sched, t, x, reference, out);
      if (k == steps) break;
      if (method == Integrator::euler) {
        x = x + step * field(inst, sched, t, x);
      } else {
        const double half = 0.5 * step;
        const Point k1 = field(inst, sched, t, x);
        const Point k2 = field(inst, sched, t + half, x + half * k1);
        const Point k3 = field(inst, sched, t + half, x + half * k2);
        const Point k4 = field(inst, sched, t + step, x + step * k3);
        x = x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      if (!x.allFinite()) {
        out.truncated = true;
        out.truncation_reason = "state became non-finite";
        break;
      }
    }
  } catch (const ConvergenceError& e) {
    out.truncated = true;
    out.truncation_reason = e.what();
  }
  return out;
}

namespace {

double ydot_rhs(const BepInstance& inst, const ScheduleFn& sched, double t,
                const Point& x, const Point& y) {
  const double lambda = sched.lambda(t);
  const double beta = sched.beta(t);
  const double lip = inst.lipschitz();
  const double lbl = lambda * beta * lip;
  const double factor = 1.0 + std::abs(sched.lambda_dot(t)) / lambda + lbl +
                        lbl * std::sqrt(1.0 + lbl * lbl);
  return factor * (y - x).norm() +
         lip * std::abs(sched.beta_dot(t)) * lambda * inst.lower()(x).norm();
}

}  // namespace

YdotBound ydot_bound_check(const BepInstance& inst, const ScheduleFn& sched,
                           const TrajectoryTrace& trace, std::size_t index) {
  if (index == 0 || index + 1 >= trace.size()) {
    throw UsageError("ydot_bound_check: index must be an interior sample");
  }
  const double dt = trace.t[index + 1] - trace.t[index - 1];
  YdotBound b;
  b.lhs = (trace.y[index + 1] - trace.y[index - 1]).norm() / dt;
  b.rhs = ydot_rhs(inst, sched, trace.t[index], trace.x[index], trace.y[index]);
  const double rhs_next =
      ydot_rhs(inst, sched, trace.t[index + 1], trace.x[index + 1], trace.y[index + 1]);
  const double rhs_prev =
      ydot_rhs(inst, sched, trace.t[index - 1], trace.x[index - 1], trace.y[index - 1]);
  const double step = 0.5 * dt;
  b.slack = 10.0 * step * std::abs(rhs_next - rhs_prev) / dt + 1e-12;
  return b;
}

std::vector<double> small_lambda_limit_check(const BepInstance& inst, double beta,
                                             const Point& x,
                                             const std::vector<double>& lambdas) {
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) out.push_back(h_map(inst, lambda, beta, x).norm());
  return out;
}

}  // namespace fbf
