// SPDX-License-Identifier: Apache-2.0
#include "fbf/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fbf {

void require_same_dim(const Point& a, const Point& b, const char* where) {
  if (a.size() != b.size()) {
    throw UsageError(std::string(where) + ": dimension mismatch (" +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
}

void require_finite(const Point& x, const char* where) {
  if (!x.allFinite()) {
    throw UsageError(std::string(where) + ": non-finite coordinate");
  }
}

double inner(const Point& a, const Point& b) {
  require_same_dim(a, b, "inner");
  return a.dot(b);
}

BoxSet::BoxSet(Point lower, Point upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_dim(lower_, upper_, "BoxSet");
  require_finite(lower_, "BoxSet lower");
  require_finite(upper_, "BoxSet upper");
  if (lower_.size() == 0) throw UsageError("BoxSet: zero dimension");
  for (Index i = 0; i < lower_.size(); ++i) {
    if (lower_[i] > upper_[i]) {
      throw UsageError("BoxSet: empty interval on axis " + std::to_string(i));
    }
  }
}

BoxSet BoxSet::cube(Index dim, double lo, double hi) {
  return BoxSet(Point::Constant(dim, lo), Point::Constant(dim, hi));
}

bool BoxSet::contains(const Point& x, double slack) const {
  require_same_dim(x, lower_, "BoxSet::contains");
  return (x.array() >= lower_.array() - slack).all() &&
         (x.array() <= upper_.array() + slack).all();
}

Point BoxSet::project(const Point& x) const {
  require_same_dim(x, lower_, "project_box");
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

BoxSet BoxSet::inflated(double factor) const {
  if (!(factor > 0.0)) throw UsageError("BoxSet::inflated: factor must be > 0");
  const Point c = center();
  const Point half = 0.5 * (upper_ - lower_) * factor;
  return BoxSet(c - half, c + half);
}

BoxSet BoxSet::product(const BoxSet& other) const {
  Point lo(dim() + other.dim());
  Point hi(dim() + other.dim());
  lo << lower_, other.lower_;
  hi << upper_, other.upper_;
  return BoxSet(std::move(lo), std::move(hi));
}

BoxSet BoxSet::slice(Index offset, Index count) const {
  if (offset < 0 || count <= 0 || offset + count > dim()) {
    throw UsageError("BoxSet::slice: range out of bounds");
  }
  return BoxSet(lower_.segment(offset, count), upper_.segment(offset, count));
}

Point BoxSet::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point x(dim());
  for (Index i = 0; i < dim(); ++i) {
    x[i] = lower_[i] + (upper_[i] - lower_[i]) * unit(rng);
  }
  return x;
}

std::vector<Point> BoxSet::vertices() const {
  const Index d = dim();
  if (d > 30) throw UsageError("BoxSet::vertices: dimension too large");
  const std::uint64_t count = std::uint64_t{1} << d;
  std::vector<Point> out;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Point v(d);
    for (Index i = 0; i < d; ++i) {
      // first axis is the most significant bit
      const bool hi = (mask >> (d - 1 - i)) & 1U;
      v[i] = hi ? upper_[i] : lower_[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Point> BoxSet::grid(int per_axis) const {
  if (per_axis < 2) throw UsageError("BoxSet::grid: need >= 2 points per axis");
  const Index d = dim();
  std::vector<int> counts(d);
  std::size_t total = 1;
  for (Index i = 0; i < d; ++i) {
    counts[i] = lower_[i] == upper_[i] ? 1 : per_axis;
    total *= static_cast<std::size_t>(counts[i]);
  }
  if (total > 50'000'000) throw UsageError("BoxSet::grid: grid too large");
  std::vector<Point> out;
  out.reserve(total);
  std::vector<int> idx(d, 0);
  for (std::size_t k = 0; k < total; ++k) {
    Point p(d);
    for (Index i = 0; i < d; ++i) {
      p[i] = counts[i] == 1
                 ? lower_[i]
                 : lower_[i] + (upper_[i] - lower_[i]) * idx[i] / (counts[i] - 1);
    }
    out.push_back(std::move(p));
    for (Index i = d - 1; i >= 0; --i) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

double BoxSet::support(const Point& w) const {
  require_same_dim(w, lower_, "BoxSet::support");
  double s = 0.0;
  for (Index i = 0; i < dim(); ++i) {
    s += w[i] >= 0.0 ? w[i] * upper_[i] : w[i] * lower_[i];
  }
  return s;
}

Point project_box(const Point& x, const BoxSet& k) { return k.project(x); }

namespace {

struct PowerResult {
  double sigma_sq;
  double residual;
  bool converged;
};

PowerResult power_sweep(const DenseMatrix& m, Point v, double tol,
                        int max_iter) {
  PowerResult r{0.0, 0.0, false};
  for (int it = 0; it < max_iter; ++it) {
    const Point mv = m * v;
    r.sigma_sq = mv.squaredNorm();
    const Point w = m.transpose() * mv;
    r.residual = (w - r.sigma_sq * v).norm();
    if (r.residual <= tol * r.sigma_sq) {
      r.converged = true;
      return r;
    }
    const double wn = w.norm();
    if (wn == 0.0) return r;
    v = w / wn;
  }
  return r;
}

}  // namespace

double spectral_norm(const DenseMatrix& m, double tol, int max_iter) {
  if (!(tol > 0.0)) throw UsageError("spectral_norm: tol must be > 0");
  if (max_iter < 1) throw UsageError("spectral_norm: max_iter must be >= 1");
  if (!m.allFinite()) throw UsageError("spectral_norm: non-finite entry");
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  const Index n = m.cols();
  Point ones = Point::Ones(n).normalized();
  // The all-ones start can be orthogonal to every right singular vector
  // with nonzero singular value; restart from the heaviest column then.
  if ((m * ones).squaredNorm() == 0.0) {
    Index best = 0;
    m.colwise().squaredNorm().maxCoeff(&best);
    ones = Point::Unit(n, best);
  }
  PowerResult best = power_sweep(m, ones, tol, max_iter);

  // ones may itself be a non-dominant eigenvector of M^T M. A second,
  // fixed pseudo-random start guards against locking onto it.
  if (n > 1) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Point alt(n);
    for (Index i = 0; i < n; ++i) alt[i] = unit(rng);
    const PowerResult second = power_sweep(m, alt.normalized(), tol, max_iter);
    if (second.sigma_sq > best.sigma_sq) best = second;
  }
  if (!best.converged) {
    throw ConvergenceError("spectral_norm: power iteration did not converge",
                           Point::Constant(1, std::sqrt(best.sigma_sq)),
                           best.residual, max_iter);
  }
  // Round up a few ulps so the result bounds the true norm from above
  // (the Rayleigh quotient approaches it from below).
  return std::sqrt(best.sigma_sq) * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
}

}  // namespace fbf
