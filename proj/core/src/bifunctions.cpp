// SPDX-License-Identifier: Apache-2.0
#include "fbf/bifunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fbf {

ProxBifunction::ProxBifunction(Point center, double weight, BoxSet k)
    : center_(std::move(center)), weight_(weight), k_(std::move(k)) {
  require_same_dim(center_, k_.lower(), "ProxBifunction");
  require_finite(center_, "ProxBifunction center");
  if (!(weight_ >= 0.0) || !std::isfinite(weight_)) {
    throw UsageError("ProxBifunction: weight must be finite and >= 0");
  }
}

ProxBifunction ProxBifunction::zero(const BoxSet& k) {
  return ProxBifunction(Point::Zero(k.dim()), 0.0, k);
}

double ProxBifunction::phi(const Point& x) const {
  require_same_dim(x, center_, "ProxBifunction::phi");
  return 0.5 * weight_ * (x - center_).squaredNorm();
}

double ProxBifunction::operator()(const Point& x, const Point& y) const {
  return phi(y) - phi(x);
}

PairedOperatorBifunction::PairedOperatorBifunction(MonotoneMap a1,
                                                   MonotoneMap a2, BoxSet k,
                                                   ResolventOptions options)
    : a1_(std::move(a1)), a2_(std::move(a2)), k_(std::move(k)), options_(options) {
  if (a1_.dim() + a2_.dim() != k_.dim()) {
    throw UsageError("PairedOperatorBifunction: dim(A1) + dim(A2) must equal dim(K)");
  }
  if (!(options_.tol > 0.0)) throw UsageError("ResolventOptions: tol must be > 0");
  if (options_.max_inner < 1) throw UsageError("ResolventOptions: max_inner must be >= 1");
}

Point PairedOperatorBifunction::product_map(const Point& x) const {
  require_same_dim(x, k_.lower(), "PairedOperatorBifunction");
  Point out(x.size());
  out.head(a1_.dim()) = a1_(x.head(a1_.dim()));
  out.tail(a2_.dim()) = a2_(x.tail(a2_.dim()));
  return out;
}

double PairedOperatorBifunction::lipschitz() const {
  return std::max(a1_.lipschitz(), a2_.lipschitz());
}

double PairedOperatorBifunction::operator()(const Point& x, const Point& y) const {
  require_same_dim(x, y, "PairedOperatorBifunction");
  return product_map(x).dot(y - x);
}

double EquilibriumBifunction::operator()(const Point& x, const Point& y) const {
  return std::visit([&](const auto& g) { return g(x, y); }, impl_);
}

Point EquilibriumBifunction::resolvent(double lambda, const Point& x) const {
  if (const auto* p = as_prox()) return prox_resolvent(*p, lambda, x);
  return operator_resolvent(*as_paired(), lambda, x);
}

const BoxSet& EquilibriumBifunction::feasible_set() const {
  return std::visit([](const auto& g) -> const BoxSet& { return g.feasible_set(); },
                    impl_);
}

Point prox_resolvent(const ProxBifunction& g, double lambda, const Point& x) {
  if (!(lambda > 0.0)) throw UsageError("prox_resolvent: lambda must be > 0");
  require_same_dim(x, g.center(), "prox_resolvent");
  const double lw = lambda * g.weight();
  return g.feasible_set().project((x + lw * g.center()) / (1.0 + lw));
}

namespace {

std::vector<Point> verification_points(const BoxSet& k, int per_axis) {
  if (per_axis < 2) return {};
  if (k.dim() <= 6) return k.grid(per_axis);
  if (k.dim() <= 12) return k.vertices();
  return {};
}

}  // namespace

Point operator_resolvent(const PairedOperatorBifunction& g, double lambda,
                         const Point& x, double tol, long max_inner) {
  if (!(lambda > 0.0)) throw UsageError("operator_resolvent: lambda must be > 0");
  if (!(tol > 0.0)) throw UsageError("operator_resolvent: tol must be > 0");
  if (max_inner < 1) throw UsageError("operator_resolvent: max_inner must be >= 1");
  require_same_dim(x, g.feasible_set().lower(), "operator_resolvent");

  const BoxSet& k = g.feasible_set();
  const double lip = g.lipschitz();
  const double f_lip = 1.0 + lambda * lip;
  const double tau = 1.0 / (f_lip * f_lip);
  // z -> P(z - tau F z) contracts with factor sqrt(1 - 2 tau + tau^2 f_lip^2)
  // for the 1-strongly monotone, f_lip-Lipschitz F.
  const double q = std::sqrt(std::max(0.0, 1.0 - tau));
  const double bound_factor = q < 1.0 ? q / (1.0 - q) : std::numeric_limits<double>::infinity();

  auto field = [&](const Point& z) -> Point {
    return lambda * g.product_map(z) + z - x;
  };

  Point z = k.project(x);
  double change = std::numeric_limits<double>::infinity();
  long it = 0;
  for (; it < max_inner; ++it) {
    Point next = k.project(z - tau * field(z));
    change = (next - z).norm();
    z = std::move(next);
    if (change * bound_factor <= tol || change == 0.0) break;
  }
  if (it == max_inner) {
    throw ConvergenceError("operator_resolvent: inner iteration exhausted max_inner",
                           z, change, max_inner);
  }

  const Point fz = (lambda * g.product_map(z) + z - x) / lambda;
  const double base = fz.norm();
  double worst = 0.0;
  for (const Point& y : verification_points(k, g.options().verify_grid)) {
    const double value = fz.dot(y - z);
    const double allowed =
        10.0 * tol * ((lip + 1.0 / lambda) * (y - z).norm() + base) + 1e-14;
    if (value < -allowed) worst = std::min(worst, value);
  }
  if (worst < 0.0) {
    throw ConvergenceError(
        "operator_resolvent: returned point violates the resolvent inequality",
        z, -worst, it + 1);
  }
  return z;
}

Point operator_resolvent(const PairedOperatorBifunction& g, double lambda,
                         const Point& x) {
  return operator_resolvent(g, lambda, x, g.options().tol, g.options().max_inner);
}

double resolvent_certificate(const EquilibriumBifunction& g, double lambda,
                             const Point& x, const Point& z, int grid) {
  if (!(lambda > 0.0)) throw UsageError("resolvent_certificate: lambda must be > 0");
  const BoxSet& k = g.feasible_set();
  require_same_dim(x, k.lower(), "resolvent_certificate");
  if (!k.contains(z, 1e-12)) {
    throw UsageError("resolvent_certificate: z must lie in K");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Point& y : k.grid(grid)) {
    best = std::min(best, g(z, y) + (z - x).dot(y - z) / lambda);
  }
  return best;
}

}  // namespace fbf
