// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fbf {

/// Raised when a caller violates a documented precondition (dimension
/// mismatch, non-positive step, empty box, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine ran out of iterations. Carries the last iterate
/// (or scalar estimate packed in a 1-vector) and the residual at exit.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd last,
                   double residual, long iterations)
      : std::runtime_error(what),
        last_(std::move(last)),
        residual_(residual),
        iterations_(iterations) {}

  const Eigen::VectorXd& last() const { return last_; }
  double residual() const { return residual_; }
  long iterations() const { return iterations_; }

 private:
  Eigen::VectorXd last_;
  double residual_;
  long iterations_;
};

/// A brute-force oracle found no admissible point at the requested
/// resolution.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fbf
