// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "fbf/errors.hpp"

namespace fbf {

/// Element of the ambient space R^d.
using Point = Eigen::VectorXd;
/// Row-major in spirit; storage order is Eigen's default.
using DenseMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Euclidean inner product. Throws UsageError on dimension mismatch.
double inner(const Point& a, const Point& b);

void require_same_dim(const Point& a, const Point& b, const char* where);
void require_finite(const Point& x, const char* where);

/// Closed box [lower, upper] in R^d.
class BoxSet {
 public:
  BoxSet(Point lower, Point upper);

  /// [lo, hi]^dim
  static BoxSet cube(Index dim, double lo, double hi);

  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  Index dim() const { return lower_.size(); }

  bool contains(const Point& x, double slack = 0.0) const;
  Point project(const Point& x) const;
  Point center() const { return 0.5 * (lower_ + upper_); }

  /// Same center, half-widths scaled by `factor`.
  BoxSet inflated(double factor) const;
  /// Cartesian product this x other.
  BoxSet product(const BoxSet& other) const;
  /// Coordinates [offset, offset + count).
  BoxSet slice(Index offset, Index count) const;

  /// Uniform sample; deterministic for a given engine state.
  Point sample(std::mt19937_64& rng) const;

  /// 2^d corners, lexicographic with "lower" before "upper" on each axis
  /// and the first coordinate varying slowest.
  std::vector<Point> vertices() const;

  /// Tensor grid with `per_axis` points on each axis (endpoints included),
  /// ordered lexicographically. Degenerate axes contribute one point.
  std::vector<Point> grid(int per_axis) const;

  /// sup_{y in K} <w, y>.
  double support(const Point& w) const;

 private:
  Point lower_;
  Point upper_;
};

/// Coordinatewise clamp onto the box.
Point project_box(const Point& x, const BoxSet& k);

/// ||M||_2 by power iteration on M^T M from the normalized all-ones vector.
/// Stops when the eigen-residual ||M^T M v - s^2 v|| falls below tol * s^2.
/// Throws ConvergenceError (carrying the last estimate) after max_iter sweeps.
double spectral_norm(const DenseMatrix& m, double tol = 1e-10,
                     int max_iter = 10000);

}  // namespace fbf
