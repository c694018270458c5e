// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbf/fbf.hpp"
#include "fbf/schedule.hpp"

namespace fbf {

/// h(lambda, beta, x) = y - x + lambda beta (Bx - By),
/// y = J_lambda^g(x - lambda beta Bx). Equals fbf_step's x_next - x.
Point h_map(const BepInstance& inst, double lambda, double beta, const Point& x);

/// Global Lipschitz bound of h in x, independent of lambda, beta and L.
inline const double kSqrtSix = 2.449489742783178;

/// Max over `samples` seeded pairs from sampling_region(K) of
/// ||h(x) - h(x')|| / ||x - x'||, skipping coincident pairs.
SampledExtreme lipschitz_h_sample(const BepInstance& inst, double lambda,
                                  double beta, long samples, std::uint64_t seed);
double lipschitz_h_check(const BepInstance& inst, double lambda, double beta,
                         long samples, std::uint64_t seed);

enum class Integrator { euler, rk4 };

std::string to_string(Integrator m);
/// Throws UsageError on anything but "euler" / "rk4".
Integrator parse_integrator(const std::string& name);

/// Samples of x' = h(lambda(t), beta(t), x) at t_k = k * step.
struct TrajectoryTrace {
  std::vector<double> t;
  std::vector<Point> x;
  /// y(t_k) = J^g_lambda(x(t_k) - lambda beta B x(t_k)).
  std::vector<Point> y;
  std::vector<double> norm_h;
  std::vector<double> gap;       // ||x - y||
  std::vector<double> dist_ref;  // NaN without a reference
  /// Set when a resolvent failure stopped the integration early.
  bool truncated = false;
  std::string truncation_reason;

  std::size_t size() const { return t.size(); }
};

/// Fixed-step explicit integration on [0, t_end]. Euler with step 1 and a
/// piecewise schedule reproduces run_fbf: sample k equals x_{k+1}.
TrajectoryTrace integrate(const BepInstance& inst, const Point& x0,
                          const ScheduleFn& sched, Integrator method, double step,
                          double t_end,
                          const std::optional<Point>& reference = std::nullopt);

struct YdotBound {
  double lhs = 0.0;    // central-difference ||y'(t)||
  double rhs = 0.0;    // analytic bound
  double slack = 0.0;  // allowance for the finite difference
  bool holds() const { return lhs <= rhs + slack; }
};

/// Compares the finite-difference speed of y(t) with
///   (1 + |l'|/l + l b L + b l L sqrt(1 + l^2 b^2 L^2)) ||y - x|| + L |b'| l ||Bx||
/// at sample index `index` of `trace`. The slack is
/// 10 * step * |rhs(t+) - rhs(t-)| / (2 step) + 1e-12. Throws UsageError at
/// either end of the trace.
YdotBound ydot_bound_check(const BepInstance& inst, const ScheduleFn& sched,
                           const TrajectoryTrace& trace, std::size_t index);

/// ||h(lambda, beta, x)|| for each lambda in `lambdas`.
std::vector<double> small_lambda_limit_check(const BepInstance& inst, double beta,
                                             const Point& x,
                                             const std::vector<double>& lambdas);

}  // namespace fbf
