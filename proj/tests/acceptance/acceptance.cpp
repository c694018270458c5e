// SPDX-License-Identifier: Apache-2.0
// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fbf/dynamics.hpp"
#include "fbf/fbf.hpp"
#include "fbf/oracle.hpp"
#include "fbf/properties.hpp"
#include "fbf/saddle.hpp"

namespace fs = std::filesystem;
using namespace fbf;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

Point pt(double a, double b) {
  Point p(2);
  p << a, b;
  return p;
}

const BoxSet kUnit = BoxSet::cube(2, 0.0, 1.0);

BepInstance example_instance() {
  return build_saddle_bep(example_problem(), ProxBifunction(pt(0.5, 0.5), 1.0, kUnit));
}

BepInstance selection_instance() {
  return BepInstance(MonotoneMap::zero(2), ProxBifunction(pt(0.3, 0.7), 1.0, kUnit));
}

Schedule growing_schedule(double lipschitz) {
  return Schedule::coupled(0.9, lipschitz, BetaLaw{1.0, 1.0, 0.5});
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

MonotoneMap shifted_identity(const Point& c, double w) {
  const Index d = c.size();
  return AffineMap(w * DenseMatrix::Identity(d, d), -w * c).as_monotone();
}

Outcome example_reproduction() {
  const BepInstance inst = example_instance();
  const auto t0 = std::chrono::steady_clock::now();
  const IterationTrace tr =
      run_fbf(inst, pt(0.5, 0.5), growing_schedule(inst.lipschitz()), StoppingRule{1e-8, 100'000});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double dist = (tr.final_point - example_solution()).norm();
  return {dist <= 1e-3 && tr.iterations() <= 100'000 && secs < 5.0,
          "dist=" + fmt(dist) + " iterations=" + std::to_string(tr.iterations()) +
              " seconds=" + fmt(secs)};
}

Outcome selection_limit() {
  const IterationTrace tr = run_fbf(selection_instance(), pt(1.0, 0.0), Schedule::constant(1.0, 1.0),
                                    StoppingRule{1e-10, 10'000});
  const double dist = (tr.final_point - pt(0.3, 0.7)).norm();
  return {dist <= 1e-4 && tr.iterations() <= 10'000,
          "dist=" + fmt(dist) + " iterations=" + std::to_string(tr.iterations())};
}

Outcome fejer_slack() {
  const BepInstance ex = example_instance();
  const SuiteResult a = fejer_slack_suite(ex, pt(0.5, 0.5), growing_schedule(ex.lipschitz()),
                                          StoppingRule{1e-8, 100'000}, example_solution());
  const SuiteResult b = fejer_slack_suite(selection_instance(), pt(1.0, 0.0),
                                          Schedule::constant(1.0, 1.0),
                                          StoppingRule{1e-10, 10'000}, pt(0.3, 0.7));
  return {a.worst >= -1e-8 && b.worst >= -1e-8,
          "min_slack example=" + fmt(a.worst) + " selection=" + fmt(b.worst)};
}

Outcome sqrt6_bound() {
  const BepInstance inst = example_instance();
  std::vector<double> products;
  for (int k = 1; k <= 10; ++k) products.push_back(k / (11.0 * inst.lipschitz()));
  const SuiteResult r = sqrt6_suite(inst, products, 100'000, 2024);
  return {r.worst <= kSqrtSix + 1e-9,
          "max_ratio=" + fmt(r.worst) + " pairs=" + std::to_string(r.samples)};
}

double identity_gap(const BepInstance& inst, const Point& x0, const Schedule& sched) {
  const IterationTrace disc = run_fbf(inst, x0, sched, StoppingRule{-1.0, 101});
  const TrajectoryTrace cont =
      integrate(inst, x0, ScheduleFn::piecewise(sched), Integrator::euler, 1.0, 100.0);
  if (disc.records.size() != cont.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t k = 0; k < cont.size(); ++k) {
    worst = std::max(worst, (disc.records[k].x - cont.x[k]).cwiseAbs().maxCoeff());
  }
  return worst;
}

Outcome euler_identity() {
  const BepInstance ex = example_instance();
  const double a = identity_gap(ex, pt(0.5, 0.5), growing_schedule(ex.lipschitz()));
  const double b = identity_gap(selection_instance(), pt(1.0, 0.0), Schedule::constant(1.0, 1.0));
  return {a <= 1e-12 && b <= 1e-12, "max_diff example=" + fmt(a) + " selection=" + fmt(b)};
}

// Random 2-D saddle instances (scalar blocks on [0,1]^2); draws whose grid
// solution set is not a singleton are rejected.
Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const BoxSet unit1 = BoxSet::cube(1, 0.0, 1.0);
  const int grid = 101;
  const double allowed = 1.0 / 100.0 + 1e-3;
  int accepted = 0, draws = 0;
  double worst = 0.0;
  bool ok = true;
  while (accepted < 10 && draws < 1000) {
    ++draws;
    DenseMatrix m(1, 1);
    m << 2.0 * coef(rng);
    const Point a = Point::Constant(1, coef(rng));
    const Point b = Point::Constant(1, coef(rng));
    if (std::abs(m(0, 0)) < 1e-3) continue;
    const SaddleProblem sp(m, a, b, unit1, unit1);
    const BepInstance inst = build_saddle_bep(sp, ProxBifunction(pt(0.5, 0.5), 1.0, kUnit));
    std::vector<Point> sols;
    try {
      sols = solve_bep_grid(inst, grid, 1e-9);
    } catch (const OracleError&) {
      continue;
    }
    // singleton lower-level solution set on the grid
    const auto stage1 = solve_ep_grid(
        [&inst](const Point& x, const Point& y) { return inst.f(x, y); }, kUnit, grid, 1e-9);
    if (stage1.size() != 1) continue;
    ++accepted;
    const IterationTrace tr = run_fbf(inst, pt(0.5, 0.5), growing_schedule(inst.lipschitz()),
                                      StoppingRule{1e-8, 100'000});
    const double d = (tr.final_point - sols.front()).norm();
    worst = std::max(worst, d);
    ok = ok && d <= allowed;
  }
  ok = ok && accepted == 10;
  return {ok, "instances=" + std::to_string(accepted) + " draws=" + std::to_string(draws) +
                  " max_dist=" + fmt(worst) + " allowed=" + fmt(allowed)};
}

Outcome conjugate_closed_forms() {
  const SaddleProblem sp = example_problem();
  const Point u = example_solution();
  double worst = 0.0;
  bool exact = true;
  for (double beta : {0.5, 1.0, 10.0}) {
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const double p = -3.0 * beta + 6.0 * beta * i / 19.0;
        const double q = -3.0 * beta + 6.0 * beta * j / 19.0;
        const ExampleConjugates c = example_conjugates(p, q, beta);
        const SupremumEstimate est = fitzpatrick_grid(sp, u, pt(2.0 * p / beta, 2.0 * q / beta));
        exact = exact && est.exact;
        worst = std::max(worst, std::abs(est.value - c.sigma - c.term()));
      }
    }
  }
  const Schedule sched = Schedule::summable(1.0, 2.0, BetaLaw{1.0, 0.0, 0.0});
  const PartialSum case2 = condition_57_partial_sum(sched, 0.0, 0.0, 100'000);

  double case1_err = 0.0;
  for (double beta : {0.5, 1.0, 10.0}) {
    const double lambda = 0.3;
    const Schedule one = Schedule::fixed(lambda, BetaLaw{beta, 0.0, 0.0});
    for (double p : {1.5 * beta, 2.0 * beta, 7.0 * beta}) {
      const double got = condition_57_partial_sum(one, p, 0.0, 1).sum;
      const double want = lambda * beta * (2.0 * p / beta - 2.0);
      case1_err = std::max(case1_err, std::abs(got - want));
    }
  }
  return {exact && worst <= 1e-9 && case2.sum == 0.0 && case1_err <= 1e-12,
          "max_diff=" + fmt(worst) + " case2_sum=" + fmt(case2.sum) +
              " case1_err=" + fmt(case1_err)};
}

Outcome resolvent_suites() {
  const EquilibriumBifunction zero = ProxBifunction::zero(kUnit);
  const EquilibriumBifunction prox = ProxBifunction(pt(0.5, 0.5), 1.0, kUnit);
  const EquilibriumBifunction paired =
      PairedOperatorBifunction(shifted_identity(Point::Constant(1, 0.5), 1.0),
                               shifted_identity(Point::Constant(1, 0.5), 1.0), kUnit,
                               ResolventOptions{1e-12, 1'000'000, 5});
  bool ok = true;
  double fne = -INFINITY, cert = INFINITY;
  std::uint64_t seed = 77;
  for (const auto* g : {&zero, &prox, &paired}) {
    const SuiteResult f = firm_nonexpansive_suite(*g, 1.0, 10'000, seed++, 1e-10);
    const SuiteResult c = resolvent_certificate_suite(*g, 1.0, 1'000, seed++, 1e-9);
    ok = ok && f.passed && c.passed;
    fne = std::max(fne, f.worst);
    cert = std::min(cert, c.worst);
  }
  const SuiteResult agree =
      resolvent_agreement_suite(pt(0.5, 0.5), 1.0, kUnit, 1.0, 10'000, seed, 1e-8, 1e-12);
  ok = ok && agree.worst <= 1e-8;
  return {ok, "firm_nonexpansive_worst=" + fmt(fne) + " agreement=" + fmt(agree.worst) +
                  " certificate_min=" + fmt(cert)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int shell(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
  const std::string cli = FBF_CLI_PATH;
  const std::string cfg = FBF_CONFIG_DIR;
  const fs::path root = fs::temp_directory_path() / "fbf_acceptance_determinism";
  const std::vector<std::string> cmds = {
      "solve --config " + cfg + "/saddle_example.json",
      "solve --config " + cfg + "/prox_selection.json",
      "dynamics --config " + cfg + "/saddle_example.json",
      "check --config " + cfg + "/saddle_example.json",
      "oracle --config " + cfg + "/saddle_example.json",
      "properties --samples 2000 --seed 9",
  };
  std::size_t files = 0;
  bool ok = true;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    std::vector<fs::path> dirs;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path d = root / (std::to_string(i) + "_" + std::to_string(rep));
      fs::remove_all(d);
      shell(cli + " " + cmds[i] + " --out " + d.string());
      dirs.push_back(d);
    }
    if (!fs::exists(dirs[0])) {
      ok = false;
      continue;
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      ++files;
      const fs::path other = dirs[1] / entry.path().filename();
      ok = ok && fs::exists(other) && slurp(entry.path()) == slurp(other);
    }
  }
  fs::remove_all(root);
  return {ok && files >= cmds.size(), "commands=" + std::to_string(cmds.size()) +
                                          " files_compared=" + std::to_string(files)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"example reproduction", example_reproduction},
      {"selection limit", selection_limit},
      {"fejer slack", fejer_slack},
      {"sqrt6 bound", sqrt6_bound},
      {"euler identity", euler_identity},
      {"oracle equivalence", oracle_equivalence},
      {"conjugate closed forms", conjugate_closed_forms},
      {"resolvent suites", resolvent_suites},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.passed ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
