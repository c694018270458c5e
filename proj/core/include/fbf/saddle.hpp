// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fbf/fbf.hpp"
#include "fbf/schedule.hpp"

namespace fbf {

/// Bilinear saddle function Gamma(u, v) = u^T M v + a^T u + b^T v on U x V.
class SaddleProblem {
 public:
  SaddleProblem(DenseMatrix m, Point a, Point b, BoxSet u_box, BoxSet v_box);

  const DenseMatrix& m() const { return m_; }
  const Point& a() const { return a_; }
  const Point& b() const { return b_; }
  const BoxSet& u_box() const { return u_box_; }
  const BoxSet& v_box() const { return v_box_; }
  Index u_dim() const { return a_.size(); }
  Index v_dim() const { return b_.size(); }
  Index dim() const { return u_dim() + v_dim(); }
  /// K = U x V.
  BoxSet k() const { return u_box_.product(v_box_); }

  double gamma(const Point& u, const Point& v) const;
  /// f((u1, v1), (u2, v2)) = Gamma(u2, v1) - Gamma(u1, v2).
  double coupling(const Point& x, const Point& y) const;
  /// B(u, v) = (M v + a, -M^T u - b).
  AffineMap op() const { return AffineMap::saddle(m_, a_, b_); }
  /// ||M||_2.
  double lipschitz() const { return spectral_norm(m_); }

 private:
  DenseMatrix m_;
  Point a_;
  Point b_;
  BoxSet u_box_;
  BoxSet v_box_;
};

/// Gamma(u, v) = uv + u + v on [0, 1]^2, whose lower-level solution set is
/// the single point (0, 1).
SaddleProblem example_problem();
/// The unique saddle point of example_problem().
Point example_solution();

/// Assembles B, K = U x V and the certificate L = ||M||_2. The feasible set
/// of `upper` must be K.
BepInstance build_saddle_bep(const SaddleProblem& sp, const EquilibriumBifunction& upper);

/// Closed-form pieces of the summability term of the example problem at
/// u = (0, 1) for the normal direction (p, q) scaled by 2 / beta.
struct ExampleConjugates {
  double first = 0.0;   // conjugate of Gamma(., 1) at 2p / beta
  double second = 0.0;  // conjugate of -Gamma(0, .) at 2q / beta
  double sigma = 0.0;   // support of the solution set at (2p, 2q) / beta
  double term() const { return first + second - sigma; }
};
ExampleConjugates example_conjugates(double p, double q, double beta);

struct SupremumEstimate {
  double value = 0.0;
  /// True when computed by vertex enumeration (exact for bilinear Gamma).
  bool exact = false;
};

/// sup_{y in K} <w, y> + f(y, u). The objective is affine along each block,
/// so the vertices of K are enumerated when dim <= 8; larger problems use a
/// tensor grid with `grid` points per axis and report exact = false.
SupremumEstimate fitzpatrick_grid(const SaddleProblem& sp, const Point& u,
                                  const Point& w, int grid = 21);

struct PartialSum {
  double sum = 0.0;
  Trend trend = Trend::bounded;
  /// Log-log slope of the summand over the last decade of the horizon.
  double term_slope = 0.0;
};

/// sum_{n <= horizon} lambda_n beta_n * example_conjugates(p_n, q_n, beta_n).term()
/// for the example problem. With `relative` the direction scales with
/// beta: p_n = p * beta_n, q_n = q * beta_n; otherwise p, q are fixed.
/// Trend: vanishing when every summand is zero, bounded when the summands
/// decay faster than n^-kSummableSlope, diverging otherwise.
PartialSum condition_57_partial_sum(const Schedule& sched, double p, double q,
                                    long horizon, bool relative = false);

/// Grid points (u, v) of K with Gamma(u, w) - tol <= Gamma(u, v) <= Gamma(z, v) + tol
/// for all grid u-points z and v-points w, in lexicographic order.
std::vector<Point> grid_saddle_points(const SaddleProblem& sp, int grid, double tol);

}  // namespace fbf
