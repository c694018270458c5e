// SPDX-License-Identifier: Apache-2.0
#include "fbf/operators.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace fbf {

MonotoneMap::MonotoneMap(Index dim, Fn eval, double lipschitz)
    : dim_(dim),
      eval_(std::make_shared<const Fn>(std::move(eval))),
      lipschitz_(lipschitz) {
  if (dim <= 0) throw UsageError("MonotoneMap: dimension must be positive");
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
    throw UsageError("MonotoneMap: Lipschitz certificate must be finite and >= 0");
  }
  if (!*eval_) throw UsageError("MonotoneMap: empty evaluation function");
}

Point MonotoneMap::operator()(const Point& x) const {
  if (x.size() != dim_) {
    throw UsageError("MonotoneMap: expected dimension " + std::to_string(dim_) +
                     ", got " + std::to_string(x.size()));
  }
  return (*eval_)(x);
}

MonotoneMap MonotoneMap::with_lipschitz(double lipschitz) const {
  MonotoneMap copy = *this;
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
    throw UsageError("MonotoneMap: Lipschitz certificate must be finite and >= 0");
  }
  copy.lipschitz_ = lipschitz;
  return copy;
}

MonotoneMap MonotoneMap::zero(Index dim) {
  MonotoneMap m(dim, [dim](const Point&) { return Point::Zero(dim); }, 0.0);
  m.zero_ = true;
  return m;
}

MonotoneMap MonotoneMap::scaled_identity(Index dim, double scale) {
  if (!(scale >= 0.0)) throw UsageError("scaled_identity: scale must be >= 0");
  return MonotoneMap(dim, [scale](const Point& x) { return Point(scale * x); },
                     scale);
}

MonotoneMap MonotoneMap::constant(Point value) {
  const Index dim = value.size();
  return MonotoneMap(dim, [v = std::move(value)](const Point&) { return v; },
                     0.0);
}

AffineMap::AffineMap(DenseMatrix matrix, Point offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw UsageError("AffineMap: matrix must be square");
  }
  if (matrix_.rows() != offset_.size()) {
    throw UsageError("AffineMap: offset dimension does not match matrix");
  }
  if (!matrix_.allFinite() || !offset_.allFinite()) {
    throw UsageError("AffineMap: non-finite data");
  }
  const double scale = 1.0 + matrix_.cwiseAbs().maxCoeff();
  if (symmetric_min_eigenvalue() < -1e-10 * scale) {
    throw UsageError("AffineMap: symmetric part is not positive semidefinite "
                     "(operator is not monotone)");
  }
}

AffineMap AffineMap::saddle(const DenseMatrix& m, const Point& a,
                            const Point& b) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (a.size() != rows || b.size() != cols) {
    throw UsageError("AffineMap::saddle: a must have M.rows() and b M.cols() entries");
  }
  DenseMatrix block = DenseMatrix::Zero(rows + cols, rows + cols);
  block.topRightCorner(rows, cols) = m;
  block.bottomLeftCorner(cols, rows) = -m.transpose();
  Point off(rows + cols);
  off << a, -b;
  return AffineMap(std::move(block), std::move(off));
}

Point AffineMap::operator()(const Point& x) const {
  require_same_dim(x, offset_, "affine_eval");
  return matrix_ * x + offset_;
}

double AffineMap::symmetric_min_eigenvalue() const {
  const DenseMatrix sym = 0.5 * (matrix_ + matrix_.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

MonotoneMap AffineMap::as_monotone() const {
  const double l = spectral_norm(matrix_);
  if (matrix_.cwiseAbs().maxCoeff() == 0.0 && offset_.cwiseAbs().maxCoeff() == 0.0) {
    return MonotoneMap::zero(dim());
  }
  return MonotoneMap(dim(), [m = *this](const Point& x) { return m(x); }, l);
}

Point affine_eval(const AffineMap& m, const Point& x) { return m(x); }

BoxSet sampling_region(const BoxSet& k) { return k.inflated(2.0); }

namespace {

void check_sampling_args(const MonotoneMap& b, const BoxSet& region,
                         long samples, const char* where) {
  if (samples < 1) throw UsageError(std::string(where) + ": samples must be >= 1");
  if (region.dim() != b.dim()) {
    throw UsageError(std::string(where) + ": region dimension mismatch");
  }
}

}  // namespace

SampledExtreme monotonicity_sample(const MonotoneMap& b, const BoxSet& region,
                                   long samples, std::uint64_t seed) {
  check_sampling_args(b, region, samples, "monotonicity_deficit");
  std::mt19937_64 rng(seed);
  SampledExtreme worst{std::numeric_limits<double>::infinity(), {}, {}};
  for (long s = 0; s < samples; ++s) {
    const Point x = region.sample(rng);
    const Point y = region.sample(rng);
    const double v = (b(x) - b(y)).dot(x - y);
    if (v < worst.value) worst = {v, x, y};
  }
  return worst;
}

double monotonicity_deficit(const MonotoneMap& b, const BoxSet& region,
                            long samples, std::uint64_t seed) {
  return monotonicity_sample(b, region, samples, seed).value;
}

SampledExtreme lipschitz_sample(const MonotoneMap& b, const BoxSet& region,
                                long samples, std::uint64_t seed) {
  check_sampling_args(b, region, samples, "lipschitz_estimate");
  std::mt19937_64 rng(seed);
  SampledExtreme worst{0.0, {}, {}};
  for (long s = 0; s < samples; ++s) {
    const Point x = region.sample(rng);
    const Point y = region.sample(rng);
    const double dx = (x - y).norm();
    if (dx == 0.0) continue;
    const double ratio = (b(x) - b(y)).norm() / dx;
    if (ratio > worst.value || worst.x.size() == 0) worst = {ratio, x, y};
  }
  return worst;
}

double lipschitz_estimate(const MonotoneMap& b, const BoxSet& region,
                          long samples, std::uint64_t seed) {
  return lipschitz_sample(b, region, samples, seed).value;
}

}  // namespace fbf
