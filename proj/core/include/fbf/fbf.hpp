// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fbf/bifunctions.hpp"
#include "fbf/geometry.hpp"
#include "fbf/operators.hpp"
#include "fbf/schedule.hpp"

namespace fbf {

/// Bilevel equilibrium problem: find x in S_f with g(x, y) >= 0 for all
/// y in S_f, where f(x, y) = <Bx, y - x> on K and g is the upper bifunction.
/// K is the feasible set of g.
class BepInstance {
 public:
  BepInstance(MonotoneMap lower, EquilibriumBifunction upper);

  const MonotoneMap& lower() const { return lower_; }
  const EquilibriumBifunction& upper() const { return upper_; }
  const BoxSet& k() const { return upper_.feasible_set(); }
  Index dim() const { return lower_.dim(); }
  /// Certificate of B. Zero only for constant maps.
  double lipschitz() const { return lower_.lipschitz(); }

  /// f(x, y) = <Bx, y - x>.
  double f(const Point& x, const Point& y) const;
  double g(const Point& x, const Point& y) const { return upper_(x, y); }

 private:
  MonotoneMap lower_;
  EquilibriumBifunction upper_;
};

struct StoppingRule {
  /// Bound on both ||x_{n+1} - x_n|| and ||x_n - y_n||. Negative disables
  /// early stopping so exactly max_iter steps run.
  double tol = 1e-8;
  long max_iter = 100'000;
};

struct StepResult {
  Point y;
  Point x_next;
  Point bx;
  Point by;
};

/// One forward-backward-forward step:
///   y = J_lambda^g(x - lambda beta Bx),  x_next = y + lambda beta (Bx - By).
/// x_next is not projected back to K. Throws UsageError unless
/// lambda, beta > 0 and lambda beta L < 1.
StepResult fbf_step(const BepInstance& inst, const Point& x, double lambda,
                    double beta);

struct IterationRecord {
  long n = 0;
  Point x;
  Point y;
  double lambda = 0.0;
  double beta = 0.0;
  double gap = 0.0;   // ||x_n - y_n||
  double step = 0.0;  // ||x_{n+1} - x_n||
  /// ||x_n - reference||, NaN without a reference.
  double dist_ref = 0.0;
  /// Fejer-inequality slack against the reference, NaN without one.
  double slack = 0.0;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  /// x_{N+1} after the last recorded step.
  Point final_point;
  bool converged = false;
  std::vector<std::string> warnings;
  /// Minimum slack over the run (+inf without a reference).
  double min_slack = 0.0;

  long iterations() const { return static_cast<long>(records.size()); }
};

/// sup_{y in K} f(y, u), the Fitzpatrick transform of B at (u, 0), over
/// the tensor grid, the vertices of K and u itself.
double lower_fitzpatrick_at_zero(const BepInstance& inst, const Point& u,
                                 int grid = 21);

/// Right side minus left side of the per-step Fejer estimate with the
/// zero normal direction:
///   [-(1 - l^2 b^2 L^2) ||x_n - y_n||^2 + l b sup_K f(., u)]
///     - [||x_{n+1} - u||^2 - ||x_n - u||^2 + l b f(u, y_n)].
/// `fitz_zero` is lower_fitzpatrick_at_zero(inst, u).
double prop31_slack(const BepInstance& inst, const Point& u, const Point& x_n,
                    const Point& y_n, const Point& x_next, double lambda,
                    double beta, double fitz_zero);
double prop31_slack(const BepInstance& inst, const Point& u, const Point& x_n,
                    const Point& y_n, const Point& x_next, double lambda,
                    double beta);

/// Runs the iteration from x0 with (lambda_n, beta_n) from `sched`,
/// n = 1, 2, ... Stops when both ||x_{n+1} - x_n|| and ||x_n - y_n|| are at
/// most stop.tol. Running out of iterations is reported through
/// `converged`, not by throwing.
IterationTrace run_fbf(const BepInstance& inst, const Point& x0,
                       const Schedule& sched, const StoppingRule& stop = {},
                       const std::optional<Point>& reference = std::nullopt);

/// Sum of ||x_n - y_n||^2 over a trace and the share contributed by its
/// last 10% of records.
struct GapSummability {
  double total = 0.0;
  double tail = 0.0;
  double tail_fraction() const { return total > 0.0 ? tail / total : 0.0; }
};
GapSummability gap_summability(const IterationTrace& trace);

}  // namespace fbf
