// SPDX-License-Identifier: Apache-2.0
#include "fbf/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fbf/dynamics.hpp"

namespace fbf {

namespace {

void check_samples(long samples, const char* where) {
  if (samples < 1) throw UsageError(std::string(where) + ": samples must be >= 1");
}

MonotoneMap shifted_identity(const Point& center, double weight) {
  return MonotoneMap(
      center.size(), [center, weight](const Point& x) { return Point(weight * (x - center)); },
      weight);
}

}  // namespace

SuiteResult firm_nonexpansive_suite(const EquilibriumBifunction& g, double lambda,
                                    long samples, std::uint64_t seed, double tol) {
  check_samples(samples, "firm_nonexpansive_suite");
  const BoxSet region = sampling_region(g.feasible_set());
  std::mt19937_64 rng(seed);
  SuiteResult r{"firm_nonexpansive", false, -std::numeric_limits<double>::infinity(),
                tol, samples, {}};
  for (long s = 0; s < samples; ++s) {
    const Point x = region.sample(rng);
    const Point y = region.sample(rng);
    const Point d = g.resolvent(lambda, x) - g.resolvent(lambda, y);
    const double v = d.squaredNorm() - d.dot(x - y);
    if (v > r.worst) {
      r.worst = v;
      r.witnesses = {x, y};
    }
  }
  r.passed = r.worst <= tol;
  return r;
}

SuiteResult resolvent_certificate_suite(const EquilibriumBifunction& g, double lambda,
                                        long samples, std::uint64_t seed, double tol,
                                        int grid) {
  check_samples(samples, "resolvent_certificate_suite");
  const BoxSet region = sampling_region(g.feasible_set());
  std::mt19937_64 rng(seed);
  SuiteResult r{"resolvent_certificate", false, std::numeric_limits<double>::infinity(),
                -tol, samples, {}};
  for (long s = 0; s < samples; ++s) {
    const Point x = region.sample(rng);
    const double v = resolvent_certificate(g, lambda, x, g.resolvent(lambda, x), grid);
    if (v < r.worst) {
      r.worst = v;
      r.witnesses = {x};
    }
  }
  r.passed = r.worst >= -tol;
  return r;
}

SuiteResult resolvent_agreement_suite(const Point& center, double weight,
                                      const BoxSet& k, double lambda, long samples,
                                      std::uint64_t seed, double tol, double inner_tol) {
  check_samples(samples, "resolvent_agreement_suite");
  require_same_dim(center, k.lower(), "resolvent_agreement_suite");
  if (k.dim() < 2) throw UsageError("resolvent_agreement_suite: need dim >= 2");
  const Index m = k.dim() / 2;
  const Index n = k.dim() - m;
  const ProxBifunction prox(center, weight, k);
  const PairedOperatorBifunction paired(shifted_identity(center.head(m), weight),
                                        shifted_identity(center.tail(n), weight), k,
                                        ResolventOptions{inner_tol, 1'000'000, 5});
  const BoxSet region = sampling_region(k);
  std::mt19937_64 rng(seed);
  SuiteResult r{"resolvent_agreement", false, 0.0, tol, samples, {}};
  for (long s = 0; s < samples; ++s) {
    const Point x = region.sample(rng);
    const double v =
        (operator_resolvent(paired, lambda, x) - prox_resolvent(prox, lambda, x)).norm();
    if (v > r.worst || r.witnesses.empty()) {
      r.worst = v;
      r.witnesses = {x};
    }
  }
  r.passed = r.worst <= tol;
  return r;
}

SuiteResult sqrt6_suite(const BepInstance& inst, const std::vector<double>& products,
                        long samples, std::uint64_t seed) {
  check_samples(samples, "sqrt6_suite");
  SuiteResult r{"sqrt6_lipschitz", false, 0.0, kSqrtSix + 1e-9, 0, {}};
  for (std::size_t i = 0; i < products.size(); ++i) {
    const SampledExtreme e =
        lipschitz_h_sample(inst, products[i], 1.0, samples, seed + i);
    r.samples += samples;
    if (e.value > r.worst || r.witnesses.empty()) {
      r.worst = e.value;
      r.witnesses = {e.x, e.y, Point::Constant(1, products[i])};
    }
  }
  r.passed = r.worst <= r.threshold;
  return r;
}

SuiteResult monotonicity_suite(const MonotoneMap& b, const BoxSet& k, long samples,
                               std::uint64_t seed) {
  check_samples(samples, "monotonicity_suite");
  const SampledExtreme e = monotonicity_sample(b, sampling_region(k), samples, seed);
  SuiteResult r{"skew_monotonicity", false, e.value, -1e-10, samples, {e.x, e.y}};
  r.passed = r.worst >= r.threshold;
  return r;
}

SuiteResult bifunction_identity_suite(const SaddleProblem& sp, long samples,
                                      std::uint64_t seed) {
  check_samples(samples, "bifunction_identity_suite");
  const AffineMap b = sp.op();
  const BoxSet region = sampling_region(sp.k());
  std::mt19937_64 rng(seed);
  SuiteResult r{"bifunction_identity", false, 0.0, 1e-12, samples, {}};
  for (long s = 0; s < samples; ++s) {
    const Point x = region.sample(rng);
    const Point y = region.sample(rng);
    const double v = std::abs(sp.coupling(x, y) - b(x).dot(y - x));
    if (v > r.worst || r.witnesses.empty()) {
      r.worst = v;
      r.witnesses = {x, y};
    }
  }
  r.passed = r.worst <= r.threshold;
  return r;
}

SuiteResult fejer_slack_suite(const BepInstance& inst, const Point& x0,
                              const Schedule& sched, const StoppingRule& stop,
                              const Point& reference) {
  const IterationTrace trace = run_fbf(inst, x0, sched, stop, reference);
  SuiteResult r{"fejer_slack", false, trace.min_slack, -1e-8, trace.iterations(), {}};
  for (const IterationRecord& rec : trace.records) {
    if (rec.slack == trace.min_slack) {
      r.witnesses = {rec.x, rec.y};
      break;
    }
  }
  r.passed = r.worst >= r.threshold;
  return r;
}

SuiteResult lipschitz_certificate_suite(const MonotoneMap& b, const BoxSet& k,
                                        long samples, std::uint64_t seed) {
  check_samples(samples, "lipschitz_certificate_suite");
  const SampledExtreme e = lipschitz_sample(b, sampling_region(k), samples, seed);
  SuiteResult r{"lipschitz_certificate", false, e.value,
                b.lipschitz() * (1.0 + 1e-9), samples, {e.x, e.y}};
  r.passed = r.worst <= r.threshold;
  return r;
}

std::vector<SuiteResult> run_default_suites(long samples, std::uint64_t seed) {
  check_samples(samples, "run_default_suites");
  const SaddleProblem sp = example_problem();
  const BoxSet k = sp.k();
  const Point mid = Point::Constant(2, 0.5);
  const EquilibriumBifunction prox = ProxBifunction(mid, 1.0, k);
  const EquilibriumBifunction zero = ProxBifunction::zero(k);
  const EquilibriumBifunction paired = PairedOperatorBifunction(
      shifted_identity(mid.head(1), 1.0), shifted_identity(mid.tail(1), 1.0), k,
      ResolventOptions{1e-12, 1'000'000, 5});
  const BepInstance saddle = build_saddle_bep(sp, prox);

  std::vector<double> products;
  for (int i = 1; i <= 10; ++i) products.push_back(i / (11.0 * saddle.lipschitz()));

  std::vector<SuiteResult> out;
  auto add = [&out](SuiteResult r, const std::string& instance) {
    r.name += "/" + instance;
    out.push_back(std::move(r));
  };
  add(firm_nonexpansive_suite(zero, 1.0, samples, seed), "projection");
  add(firm_nonexpansive_suite(prox, 1.0, samples, seed + 1), "prox");
  add(firm_nonexpansive_suite(paired, 1.0, samples, seed + 2), "paired_operator");
  const long cert_samples = std::min(samples, 1000L);
  add(resolvent_certificate_suite(zero, 1.0, cert_samples, seed + 3), "projection");
  add(resolvent_certificate_suite(prox, 1.0, cert_samples, seed + 4), "prox");
  add(resolvent_certificate_suite(paired, 1.0, cert_samples, seed + 5), "paired_operator");
  add(resolvent_agreement_suite(Point(Point::Constant(2, 0.5)), 1.0, k, 1.0,
                                std::min(samples, 10'000L), seed + 6),
      "quadratic_gradient");
  add(sqrt6_suite(saddle, products, samples, seed + 7), "example_saddle");
  add(monotonicity_suite(saddle.lower(), k, samples, seed + 8), "example_saddle");
  add(bifunction_identity_suite(sp, samples, seed + 9), "example_saddle");
  add(lipschitz_certificate_suite(saddle.lower(), k, samples, seed + 10),
      "example_saddle");

  const Schedule growing = Schedule::coupled(0.9, saddle.lipschitz(), BetaLaw{1.0, 1.0, 0.5});
  add(fejer_slack_suite(saddle, mid, growing, StoppingRule{}, example_solution()),
      "example_saddle");
  const Point c(Point{{0.3, 0.7}});
  const BepInstance selection(MonotoneMap::zero(2), ProxBifunction(c, 1.0, k));
  add(fejer_slack_suite(selection, Point(Point{{1.0, 0.0}}), Schedule::constant(1.0, 1.0),
                        StoppingRule{1e-8, 10'000}, c),
      "prox_selection");
  return out;
}

}  // namespace fbf
