// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "fbf/geometry.hpp"

namespace fbf {

/// Single-valued vector field B : R^d -> R^d together with a Lipschitz
/// certificate. Monotonicity is a contract of the constructor's caller;
/// the sampled checks below validate it.
class MonotoneMap {
 public:
  using Fn = std::function<Point(const Point&)>;

  MonotoneMap(Index dim, Fn eval, double lipschitz);

  Point operator()(const Point& x) const;
  Index dim() const { return dim_; }
  double lipschitz() const { return lipschitz_; }
  /// True when the map is known to be identically zero.
  bool is_zero() const { return zero_; }

  /// Copy with a replaced certificate (test fixtures, tightened bounds).
  MonotoneMap with_lipschitz(double lipschitz) const;

  static MonotoneMap zero(Index dim);
  static MonotoneMap scaled_identity(Index dim, double scale);
  static MonotoneMap constant(Point value);

 private:
  Index dim_;
  std::shared_ptr<const Fn> eval_;
  double lipschitz_;
  bool zero_ = false;
};

/// x -> matrix * x + offset with a square matrix whose symmetric part is
/// positive semidefinite.
class AffineMap {
 public:
  AffineMap(DenseMatrix matrix, Point offset);

  /// The skew saddle operator (u, v) -> (M v + a, -M^T u - b).
  static AffineMap saddle(const DenseMatrix& m, const Point& a, const Point& b);

  const DenseMatrix& matrix() const { return matrix_; }
  const Point& offset() const { return offset_; }
  Index dim() const { return offset_.size(); }

  Point operator()(const Point& x) const;

  /// Smallest eigenvalue of (A + A^T) / 2.
  double symmetric_min_eigenvalue() const;

  /// Wraps as a MonotoneMap certified with L = spectral_norm(matrix).
  MonotoneMap as_monotone() const;

 private:
  DenseMatrix matrix_;
  Point offset_;
};

Point affine_eval(const AffineMap& m, const Point& x);

/// Extreme value of a sampled pair statistic, with the witnessing pair.
struct SampledExtreme {
  double value = 0.0;
  Point x;
  Point y;
};

/// The region the sampled checks draw from: the bounding box of K with its
/// half-widths doubled, so forward steps that leave K are still covered.
BoxSet sampling_region(const BoxSet& k);

/// min over sampled pairs of <Bx - By, x - y>.
SampledExtreme monotonicity_sample(const MonotoneMap& b, const BoxSet& region,
                                   long samples, std::uint64_t seed);
double monotonicity_deficit(const MonotoneMap& b, const BoxSet& region,
                            long samples, std::uint64_t seed);

/// max over sampled pairs (x != y) of ||Bx - By|| / ||x - y||.
SampledExtreme lipschitz_sample(const MonotoneMap& b, const BoxSet& region,
                                long samples, std::uint64_t seed);
double lipschitz_estimate(const MonotoneMap& b, const BoxSet& region,
                          long samples, std::uint64_t seed);

}  // namespace fbf
