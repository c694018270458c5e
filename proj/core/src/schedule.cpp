// SPDX-License-Identifier: Apache-2.0
#include "fbf/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbf/errors.hpp"

namespace fbf {

double BetaLaw::at(double n) const {
  return offset + scale * std::pow(n, exponent);
}

double BetaLaw::derivative(double n) const {
  if (exponent == 0.0) return 0.0;
  return scale * exponent * std::pow(n, exponent - 1.0);
}

namespace {

void check_beta_law(const BetaLaw& beta) {
  if (!std::isfinite(beta.offset) || !std::isfinite(beta.scale) ||
      !std::isfinite(beta.exponent)) {
    throw UsageError("Schedule: non-finite beta law");
  }
  if (beta.offset < 0.0 || beta.scale < 0.0 || beta.exponent < 0.0) {
    throw UsageError("Schedule: beta law parameters must be >= 0");
  }
  if (!(beta.at(1.0) > 0.0)) throw UsageError("Schedule: beta_1 must be > 0");
}

}  // namespace

Schedule Schedule::coupled(double rho, double lipschitz, BetaLaw beta) {
  check_beta_law(beta);
  if (!(lipschitz > 0.0)) {
    throw UsageError("Schedule::coupled: needs a positive Lipschitz constant");
  }
  if (!(rho > 0.0)) throw UsageError("Schedule::coupled: rho must be > 0");
  Schedule s;
  s.law_ = StepLaw::coupled;
  s.beta_ = beta;
  s.rho_ = rho;
  s.lipschitz_ = lipschitz;
  return s;
}

Schedule Schedule::fixed(double lambda, BetaLaw beta) {
  check_beta_law(beta);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw UsageError("Schedule::fixed: lambda must be finite and > 0");
  }
  Schedule s;
  s.law_ = StepLaw::fixed;
  s.beta_ = beta;
  s.lambda0_ = lambda;
  return s;
}

Schedule Schedule::summable(double scale, double decay, BetaLaw beta) {
  check_beta_law(beta);
  if (!(scale > 0.0)) throw UsageError("Schedule::summable: scale must be > 0");
  if (!(decay >= 0.0)) throw UsageError("Schedule::summable: decay must be >= 0");
  Schedule s;
  s.law_ = StepLaw::summable;
  s.beta_ = beta;
  s.product_scale_ = scale;
  s.product_decay_ = decay;
  return s;
}

Schedule Schedule::constant(double lambda, double beta) {
  return fixed(lambda, BetaLaw{beta, 0.0, 0.0});
}

double Schedule::beta(long n) const { return beta_.at(static_cast<double>(n)); }

double Schedule::lambda(long n) const {
  switch (law_) {
    case StepLaw::coupled:
      return rho_ / (lipschitz_ * beta(n));
    case StepLaw::fixed:
      return lambda0_;
    case StepLaw::summable:
      return product_scale_ * std::pow(static_cast<double>(n), -product_decay_) / beta(n);
  }
  return lambda0_;
}

double Schedule::product(long n) const {
  switch (law_) {
    case StepLaw::coupled:
      return rho_ / lipschitz_;
    case StepLaw::summable:
      return product_scale_ * std::pow(static_cast<double>(n), -product_decay_);
    case StepLaw::fixed:
      break;
  }
  return lambda(n) * beta(n);
}

void Schedule::validate_step_bound(double lipschitz, long horizon) const {
  if (lipschitz == 0.0) return;
  // Every shipped law has a monotone product, so the extremes sit at the
  // ends of the horizon.
  const double first = product(1) * lipschitz;
  const double last = product(std::max(1L, horizon)) * lipschitz;
  const double worst = std::max(first, last);
  if (!(worst < 1.0)) {
    throw UsageError("schedule violates the step bound lambda*beta*L < 1 (got " +
                     std::to_string(worst) + ")");
  }
}

ScheduleFn ScheduleFn::constant(double lambda, double beta) {
  if (!(lambda > 0.0) || !(beta > 0.0)) {
    throw UsageError("ScheduleFn::constant: lambda and beta must be > 0");
  }
  ScheduleFn s(Family::constant);
  s.a_ = lambda;
  s.b_ = beta;
  return s;
}

ScheduleFn ScheduleFn::power_beta(double lambda_bar, double beta0, double p) {
  if (!(lambda_bar > 0.0) || !(beta0 > 0.0) || !(p >= 0.0)) {
    throw UsageError("ScheduleFn::power_beta: need lambda_bar > 0, beta0 > 0, p >= 0");
  }
  ScheduleFn s(Family::power_beta);
  s.a_ = lambda_bar;
  s.b_ = beta0;
  s.p_ = p;
  return s;
}

ScheduleFn ScheduleFn::exp_lambda(double delta, double c, double beta) {
  if (!(delta > 0.0) || !(c >= 0.0) || !(beta > 0.0)) {
    throw UsageError("ScheduleFn::exp_lambda: need delta > 0, c >= 0, beta > 0");
  }
  ScheduleFn s(Family::exp_lambda);
  s.a_ = delta;
  s.b_ = c;
  s.c_ = beta;
  return s;
}

ScheduleFn ScheduleFn::coupled(double rho, double lipschitz, double beta0, double p) {
  if (!(rho > 0.0) || !(lipschitz > 0.0) || !(beta0 > 0.0) || !(p >= 0.0)) {
    throw UsageError("ScheduleFn::coupled: need rho > 0, L > 0, beta0 > 0, p >= 0");
  }
  ScheduleFn s(Family::coupled);
  s.a_ = rho;
  s.b_ = beta0;
  s.p_ = p;
  s.c_ = lipschitz;
  return s;
}

ScheduleFn ScheduleFn::piecewise(const Schedule& discrete) {
  ScheduleFn s(Family::piecewise);
  s.discrete_ = discrete;
  return s;
}

namespace {

long piece_index(double t) { return static_cast<long>(std::floor(t)) + 1; }

}  // namespace

double ScheduleFn::lambda(double t) const {
  switch (family_) {
    case Family::constant:
    case Family::power_beta:
      return a_;
    case Family::exp_lambda:
      return a_ + b_ * std::exp(-t);
    case Family::coupled:
      return a_ / (c_ * beta(t));
    case Family::piecewise:
      return discrete_.lambda(piece_index(t));
  }
  return a_;
}

double ScheduleFn::beta(double t) const {
  switch (family_) {
    case Family::constant:
      return b_;
    case Family::power_beta:
    case Family::coupled:
      return b_ * std::pow(1.0 + t, p_);
    case Family::exp_lambda:
      return c_;
    case Family::piecewise:
      return discrete_.beta(piece_index(t));
  }
  return b_;
}

double ScheduleFn::lambda_dot(double t) const {
  switch (family_) {
    case Family::exp_lambda:
      return -b_ * std::exp(-t);
    case Family::coupled: {
      const double bt = beta(t);
      return -a_ * beta_dot(t) / (c_ * bt * bt);
    }
    default:
      return 0.0;
  }
}

double ScheduleFn::beta_dot(double t) const {
  switch (family_) {
    case Family::power_beta:
    case Family::coupled:
      return p_ == 0.0 ? 0.0 : b_ * p_ * std::pow(1.0 + t, p_ - 1.0);
    default:
      return 0.0;
  }
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::vanishing:
      return "vanishing";
    case Trend::bounded:
      return "bounded";
    case Trend::diverging:
      return "diverging";
  }
  return "unknown";
}

double loglog_slope(double n0, double a0, double n1, double a1) {
  a0 = std::abs(a0);
  a1 = std::abs(a1);
  if (a1 == 0.0) return -std::numeric_limits<double>::infinity();
  if (a0 == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(a1 / a0) / std::log(n1 / n0);
}

ConditionReport check_schedule(const Schedule& sched, double lipschitz, long horizon) {
  if (horizon < 1) throw UsageError("check_schedule: horizon must be >= 1");
  if (!(lipschitz >= 0.0)) throw UsageError("check_schedule: L must be >= 0");

  ConditionReport r;
  r.horizon = horizon;
  r.lipschitz = lipschitz;
  r.min_lambda = std::numeric_limits<double>::infinity();
  r.tail_min_lambda = std::numeric_limits<double>::infinity();
  const long tail_start = std::max(1L, horizon - horizon / 10);

  for (long n = 1; n <= horizon; ++n) {
    const double lam = sched.lambda(n);
    const double prod = sched.product(n);
    r.max_product_l = std::max(r.max_product_l, prod * lipschitz);
    r.min_lambda = std::min(r.min_lambda, lam);
    r.product_partial_sum += prod;
    if (n >= tail_start) {
      r.tail_max_product_l = std::max(r.tail_max_product_l, prod * lipschitz);
      r.tail_min_lambda = std::min(r.tail_min_lambda, lam);
    }
  }
  r.beta_first = sched.beta(1);
  r.beta_last = sched.beta(horizon);

  const long n0 = horizon >= 10 ? horizon / 10 : 1;
  const long n1 = horizon;
  if (n1 > n0) {
    r.lambda_slope = loglog_slope(n0, sched.lambda(n0), n1, sched.lambda(n1));
    r.beta_slope = loglog_slope(n0, sched.beta(n0), n1, sched.beta(n1));
    r.product_slope = loglog_slope(n0, sched.product(n0), n1, sched.product(n1));
  }

  const bool product_flat_or_growing = r.product_slope > -kFlatSlope;
  r.step_bound_holds = product_flat_or_growing &&
                       (lipschitz == 0.0 || r.tail_max_product_l < 1.0) &&
                       r.max_product_l < (lipschitz == 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  r.lambda_bounded_below = r.lambda_slope > -kFlatSlope && r.tail_min_lambda > 0.0;
  r.beta_diverges = r.beta_slope > kFlatSlope;
  r.product_summable = r.product_slope < -kSummableSlope;
  r.all_hypotheses_hold =
      r.step_bound_holds && r.lambda_bounded_below && r.beta_diverges;
  return r;
}

}  // namespace fbf
