// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbf/bifunctions.hpp"
#include "fbf/fbf.hpp"
#include "fbf/saddle.hpp"

namespace fbf {

/// Outcome of a sampled invariant check. `worst` is the extreme statistic
/// and `witnesses` the inputs that produced it.
struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double threshold = 0.0;
  long samples = 0;
  std::vector<Point> witnesses;
};

/// max over pairs of ||Jx - Jy||^2 - <Jx - Jy, x - y>; passes when <= tol.
SuiteResult firm_nonexpansive_suite(const EquilibriumBifunction& g, double lambda,
                                    long samples, std::uint64_t seed,
                                    double tol = 1e-10);

/// min over sampled x of resolvent_certificate(g, lambda, x, J x);
/// passes when >= -tol.
SuiteResult resolvent_certificate_suite(const EquilibriumBifunction& g, double lambda,
                                        long samples, std::uint64_t seed,
                                        double tol = 1e-9, int grid = 21);

/// max ||operator_resolvent - prox_resolvent|| for A = w (. - c) on both
/// blocks against phi = (w/2) ||. - c||^2; passes when <= tol.
SuiteResult resolvent_agreement_suite(const Point& center, double weight,
                                      const BoxSet& k, double lambda, long samples,
                                      std::uint64_t seed, double tol = 1e-8,
                                      double inner_tol = 1e-12);

/// max ||h(x) - h(x')|| / ||x - x'|| over pairs and lambda beta in
/// `products` (beta = 1); passes when <= sqrt(6) + 1e-9.
SuiteResult sqrt6_suite(const BepInstance& inst, const std::vector<double>& products,
                        long samples, std::uint64_t seed);

/// min over pairs of <Bx - By, x - y>; passes when >= -1e-10.
SuiteResult monotonicity_suite(const MonotoneMap& b, const BoxSet& k, long samples,
                               std::uint64_t seed);

/// max |f(x, y) - <B x, y - x>| for the saddle coupling; passes when <= 1e-12.
SuiteResult bifunction_identity_suite(const SaddleProblem& sp, long samples,
                                      std::uint64_t seed);

/// min Fejer slack over a run against `reference`; passes when >= -1e-8.
SuiteResult fejer_slack_suite(const BepInstance& inst, const Point& x0,
                              const Schedule& sched, const StoppingRule& stop,
                              const Point& reference);

/// max sampled ||Bx - By|| / ||x - y||; passes when it does not exceed the
/// certificate by more than 1e-9 relative.
SuiteResult lipschitz_certificate_suite(const MonotoneMap& b, const BoxSet& k,
                                        long samples, std::uint64_t seed);

/// Every suite on the shipped instances: the example saddle problem with
/// zero, prox and paired-operator upper bifunctions and the prox selection
/// problem.
std::vector<SuiteResult> run_default_suites(long samples, std::uint64_t seed);

}  // namespace fbf
