// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace fbf {

/// beta_n = offset + scale * n^exponent, n = 1, 2, ...
///
/// offset 0 reproduces the pure power law beta_0 (1 + k)^p in zero-based
/// counting; offset 1, scale 1, exponent 1/2 gives 1 + sqrt(n).
struct BetaLaw {
  double offset = 0.0;
  double scale = 1.0;
  double exponent = 0.0;

  double at(double n) const;
  /// d/dn, used by the continuous-time families.
  double derivative(double n) const;
};

/// How lambda_n is tied to beta_n.
enum class StepLaw {
  /// lambda_n beta_n = rho / L.
  coupled,
  /// lambda_n = lambda_0 regardless of beta_n.
  fixed,
  /// lambda_n beta_n = scale * n^(-decay).
  summable,
};

/// Parameter sequences (lambda_n, beta_n) of the discrete iteration,
/// indexed from n = 1.
class Schedule {
 public:
  static Schedule coupled(double rho, double lipschitz, BetaLaw beta);
  static Schedule fixed(double lambda, BetaLaw beta);
  static Schedule summable(double scale, double decay, BetaLaw beta);
  /// lambda_n = lambda, beta_n = beta.
  static Schedule constant(double lambda, double beta);

  StepLaw law() const { return law_; }
  const BetaLaw& beta_law() const { return beta_; }
  double rho() const { return rho_; }
  double lipschitz() const { return lipschitz_; }
  double lambda0() const { return lambda0_; }
  double product_scale() const { return product_scale_; }
  double product_decay() const { return product_decay_; }

  double beta(long n) const;
  double lambda(long n) const;
  double product(long n) const;

  /// Throws UsageError unless lambda_n beta_n L < 1 for n = 1..horizon.
  void validate_step_bound(double lipschitz, long horizon) const;

 private:
  Schedule() = default;

  StepLaw law_ = StepLaw::fixed;
  BetaLaw beta_;
  double rho_ = 0.0;
  double lipschitz_ = 0.0;
  double lambda0_ = 1.0;
  double product_scale_ = 1.0;
  double product_decay_ = 0.0;
};

/// Continuous-time parameter functions t -> lambda(t), beta(t) with
/// closed-form derivatives.
class ScheduleFn {
 public:
  enum class Family {
    constant,
    /// lambda(t) = lambda_bar, beta(t) = beta_0 (1 + t)^p
    power_beta,
    /// lambda(t) = delta + c e^{-t}, beta constant
    exp_lambda,
    /// lambda(t) beta(t) = rho / L, beta(t) = beta_0 (1 + t)^p
    coupled,
    /// lambda(t) = lambda_{floor(t)+1}, beta(t) = beta_{floor(t)+1}
    piecewise,
  };

  static ScheduleFn constant(double lambda, double beta);
  static ScheduleFn power_beta(double lambda_bar, double beta0, double p);
  static ScheduleFn exp_lambda(double delta, double c, double beta);
  static ScheduleFn coupled(double rho, double lipschitz, double beta0, double p);
  static ScheduleFn piecewise(const Schedule& discrete);

  Family family() const { return family_; }

  double lambda(double t) const;
  double beta(double t) const;
  double lambda_dot(double t) const;
  double beta_dot(double t) const;

 private:
  explicit ScheduleFn(Family f) : family_(f), discrete_(Schedule::constant(1.0, 1.0)) {}

  Family family_;
  double a_ = 0.0;  // lambda, lambda_bar, delta, or rho
  double b_ = 0.0;  // beta, beta0, or c
  double p_ = 0.0;
  double c_ = 0.0;  // beta for exp_lambda; L for coupled
  Schedule discrete_;
};

/// Sequence trend over the last decade of a horizon, from the log-log slope
/// between n = horizon / 10 and n = horizon.
enum class Trend { vanishing, bounded, diverging };

std::string to_string(Trend t);

/// Power-law exponent s with |a_n| ~ n^s, estimated from two samples.
double loglog_slope(double n0, double a0, double n1, double a1);

/// Numeric witnesses for the step and growth hypotheses of the convergence
/// result, evaluated on the first `horizon` terms.
struct ConditionReport {
  long horizon = 0;
  double lipschitz = 0.0;

  double max_product_l = 0.0;       // max_n lambda_n beta_n L
  double tail_max_product_l = 0.0;  // same, last 10% of the horizon
  double min_lambda = 0.0;
  double tail_min_lambda = 0.0;
  double beta_first = 0.0;
  double beta_last = 0.0;
  double lambda_slope = 0.0;
  double beta_slope = 0.0;
  double product_slope = 0.0;
  double product_partial_sum = 0.0;  // sum_n lambda_n beta_n

  /// 0 < limsup lambda_n beta_n < 1 / L
  bool step_bound_holds = false;
  /// liminf lambda_n > 0
  bool lambda_bounded_below = false;
  /// beta_n -> infinity
  bool beta_diverges = false;
  /// sum lambda_n beta_n < infinity
  bool product_summable = false;
  /// all of the step and growth hypotheses at once
  bool all_hypotheses_hold = false;
};

/// Slope thresholds used by the classifier: |slope| below
/// kFlatSlope counts as flat; a product decaying faster than n^-kSummableSlope
/// counts as summable.
inline constexpr double kFlatSlope = 0.05;
inline constexpr double kSummableSlope = 1.05;

ConditionReport check_schedule(const Schedule& sched, double lipschitz, long horizon);

}  // namespace fbf
