// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <variant>

#include "fbf/geometry.hpp"
#include "fbf/operators.hpp"

namespace fbf {

/// Tuning for iterative resolvent evaluation.
struct ResolventOptions {
  /// Bound on the distance of the returned point to the exact resolvent.
  double tol = 1e-10;
  long max_inner = 1'000'000;
  /// Points per axis of the post-solve verification grid (0 disables).
  int verify_grid = 5;
};

/// g(x, y) = phi(y) - phi(x) with phi(x) = (w/2) ||x - c||^2, posed on K.
/// weight 0 gives the zero bifunction, whose resolvent is the projection.
class ProxBifunction {
 public:
  ProxBifunction(Point center, double weight, BoxSet k);

  /// The zero bifunction on K.
  static ProxBifunction zero(const BoxSet& k);

  const Point& center() const { return center_; }
  double weight() const { return weight_; }
  const BoxSet& feasible_set() const { return k_; }

  double phi(const Point& x) const;
  double operator()(const Point& x, const Point& y) const;

 private:
  Point center_;
  double weight_;
  BoxSet k_;
};

/// g((u1, v1), (u2, v2)) = <A1 u1, u2 - u1> + <A2 v1, v2 - v1> on K = U x V,
/// the first a1.dim() coordinates belonging to U.
class PairedOperatorBifunction {
 public:
  PairedOperatorBifunction(MonotoneMap a1, MonotoneMap a2, BoxSet k,
                           ResolventOptions options = {});

  const MonotoneMap& a1() const { return a1_; }
  const MonotoneMap& a2() const { return a2_; }
  const BoxSet& feasible_set() const { return k_; }
  const ResolventOptions& options() const { return options_; }

  /// (A1 x Ax2)(u, v) = (A1 u, A2 v).
  Point product_map(const Point& x) const;
  /// Lipschitz certificate of the product map.
  double lipschitz() const;

  double operator()(const Point& x, const Point& y) const;

 private:
  MonotoneMap a1_;
  MonotoneMap a2_;
  BoxSet k_;
  ResolventOptions options_;
};

/// Closed family of upper-level bifunctions with evaluation and resolvent.
class EquilibriumBifunction {
 public:
  EquilibriumBifunction(ProxBifunction g) : impl_(std::move(g)) {}
  EquilibriumBifunction(PairedOperatorBifunction g) : impl_(std::move(g)) {}

  double operator()(const Point& x, const Point& y) const;
  /// J_lambda^g(x).
  Point resolvent(double lambda, const Point& x) const;
  const BoxSet& feasible_set() const;
  Index dim() const { return feasible_set().dim(); }

  const ProxBifunction* as_prox() const { return std::get_if<ProxBifunction>(&impl_); }
  const PairedOperatorBifunction* as_paired() const {
    return std::get_if<PairedOperatorBifunction>(&impl_);
  }

 private:
  std::variant<ProxBifunction, PairedOperatorBifunction> impl_;
};

/// Closed-form resolvent: clamp((x + lambda w c) / (1 + lambda w)) onto K.
Point prox_resolvent(const ProxBifunction& g, double lambda, const Point& x);

/// Resolvent of the paired-operator bifunction: the solution of the
/// 1-strongly monotone variational inequality
///   <lambda (A1 x A2) z + z - x, y - z> >= 0  for all y in K,
/// by the projected fixed-point iteration with step 1 / (1 + lambda L_A)^2.
/// The loop stops once the contraction bound q / (1 - q) * ||z_k - z_{k-1}||
/// certifies ||z_k - z*|| <= tol. Throws ConvergenceError otherwise, or when
/// the returned point fails the grid verification of the defining inequality.
Point operator_resolvent(const PairedOperatorBifunction& g, double lambda,
                         const Point& x, double tol, long max_inner);
Point operator_resolvent(const PairedOperatorBifunction& g, double lambda,
                         const Point& x);

/// min over a uniform grid of y in K of g(z, y) + (1/lambda) <z - x, y - z>.
/// Nonnegative (up to rounding) exactly when z is the resolvent at grid
/// resolution.
double resolvent_certificate(const EquilibriumBifunction& g, double lambda,
                             const Point& x, const Point& z, int grid = 21);

}  // namespace fbf
