// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <CLI11.hpp>

#include "fbf/dynamics.hpp"
#include "fbf/errors.hpp"
#include "fbf/oracle.hpp"
#include "fbf/properties.hpp"
#include "output.hpp"

namespace fbf::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t effective_seed(const RunConfig* cfg, const Options& opt) {
  if (opt.seed) return *opt.seed;
  return cfg ? cfg->seed : 0;
}

void append(std::vector<double>& row, const Point& p) {
  for (Index i = 0; i < p.size(); ++i) row.push_back(p[i]);
}

json beta_json(const BetaLaw& b) {
  return {{"offset", b.offset}, {"scale", b.scale}, {"exponent", b.exponent}};
}

json schedule_json(const Schedule& s) {
  json j;
  switch (s.law()) {
    case StepLaw::coupled:
      j = {{"law", "coupled"}, {"rho", s.rho()}, {"lipschitz", s.lipschitz()}};
      break;
    case StepLaw::fixed:
      j = {{"law", "fixed"}, {"lambda", s.lambda0()}};
      break;
    case StepLaw::summable:
      j = {{"law", "summable"}, {"scale", s.product_scale()}, {"decay", s.product_decay()}};
      break;
  }
  j["beta"] = beta_json(s.beta_law());
  return j;
}

std::string csv_or_json(const Options& opt, const std::string& stem) {
  return stem + (opt.format == Format::csv ? ".csv" : ".json");
}

// Column-major JSON form of a table: {"columns": [...], "rows": [[...], ...]}.
json table_json(const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  json r = json::array();
  for (const auto& row : rows) {
    json jr = json::array();
    for (double v : row) jr.push_back(number_json(v));
    r.push_back(std::move(jr));
  }
  return {{"columns", header}, {"rows", std::move(r)}};
}

void emit_table(const Options& opt, const std::string& stem,
                const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  if (opt.format == Format::csv) {
    CsvTable t(header);
    for (const auto& row : rows) t.add_row(row);
    write_atomic(opt.out / (stem + ".csv"), t.text());
  } else {
    write_json(opt.out / (stem + ".json"), table_json(header, rows));
  }
}

}  // namespace

int cmd_solve(const RunConfig& cfg, const Options& opt, std::ostream& log) {
  const BepInstance& inst = cfg.instance;
  IterationTrace trace;
  try {
    trace = run_fbf(inst, cfg.x0, cfg.schedule, cfg.stop, cfg.reference);
  } catch (const ConvergenceError& e) {
    json summary = {{"converged", false},
                    {"error", e.what()},
                    {"iterations", e.iterations()},
                    {"final_point", point_json(e.last())}};
    write_json(opt.out / "summary.json", summary);
    log << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }

  const Index d = inst.dim();
  std::vector<std::string> header{"n"};
  for (const auto& h : indexed_names("x", d)) header.push_back(h);
  for (const auto& h : indexed_names("y", d)) header.push_back(h);
  for (const char* h : {"lambda", "beta", "res_fix", "res_gap", "dist_ref", "prop31_slack"}) {
    header.emplace_back(h);
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    std::vector<double> row{static_cast<double>(r.n)};
    append(row, r.x);
    append(row, r.y);
    for (double v : {r.lambda, r.beta, r.step, r.gap, r.dist_ref, r.slack}) row.push_back(v);
    rows.push_back(std::move(row));
  }
  emit_table(opt, "trace", header, rows);

  const IterationRecord& last = trace.records.back();
  const GapSummability gs = gap_summability(trace);
  json summary = {
      {"converged", trace.converged},
      {"iterations", trace.iterations()},
      {"final_point", point_json(trace.final_point)},
      {"residuals",
       {{"res_fix", number_json(last.step)},
        {"res_gap", number_json(last.gap)},
        {"dist_ref", number_json(last.dist_ref)},
        {"min_prop31_slack", cfg.reference ? number_json(trace.min_slack) : json(nullptr)}}},
      {"gap_sum", {{"total", gs.total}, {"tail", gs.tail}}},
      {"lipschitz", inst.lipschitz()},
      {"schedule", schedule_json(cfg.schedule)},
      {"tol", cfg.stop.tol},
      {"max_iter", cfg.stop.max_iter},
      {"seed", effective_seed(&cfg, opt)},
      {"trace_file", csv_or_json(opt, "trace")},
      {"warnings", trace.warnings},
  };
  write_json(opt.out / "summary.json", summary);

  for (const auto& w : trace.warnings) log << "warning: " << w << "\n";
  log << (trace.converged ? "converged" : "not converged") << " after " << trace.iterations()
      << " iterations; final point " << point_json(trace.final_point).dump() << "\n";
  return trace.converged ? kConverged : kNotConverged;
}

int cmd_dynamics(const RunConfig& cfg, const Options& opt, std::ostream& log) {
  const BepInstance& inst = cfg.instance;
  Integrator method = cfg.dynamics.method;
  double step = cfg.dynamics.step;
  double t_end = cfg.dynamics.t_end;
  ScheduleFn sched = cfg.dynamics.schedule.value_or(ScheduleFn::piecewise(cfg.schedule));
  if (opt.identity) {
    method = Integrator::euler;
    step = 1.0;
    sched = ScheduleFn::piecewise(cfg.schedule);
    // match the discrete run row for row
    long n = cfg.stop.max_iter;
    try {
      n = run_fbf(inst, cfg.x0, cfg.schedule, cfg.stop).iterations();
    } catch (const ConvergenceError& e) {
      n = std::max(1L, e.iterations());
    }
    t_end = static_cast<double>(n - 1);
  }

  TrajectoryTrace tr;
  if (t_end > 0.0) {
    tr = integrate(inst, cfg.x0, sched, method, step, t_end, cfg.reference);
  } else {
    // a single sample: the initial point
    const auto r = fbf_step(inst, cfg.x0, sched.lambda(0.0), sched.beta(0.0));
    tr.t.push_back(0.0);
    tr.x.push_back(cfg.x0);
    tr.y.push_back(r.y);
    tr.norm_h.push_back((r.x_next - cfg.x0).norm());
    tr.gap.push_back((cfg.x0 - r.y).norm());
    tr.dist_ref.push_back(cfg.reference ? (cfg.x0 - *cfg.reference).norm() : kNaN);
  }

  const Index d = inst.dim();
  std::vector<std::string> header{"t"};
  for (const auto& h : indexed_names("x", d)) header.push_back(h);
  for (const auto& h : indexed_names("y", d)) header.push_back(h);
  header.emplace_back("norm_h");
  header.emplace_back("dist_ref");
  std::vector<std::vector<double>> rows;
  rows.reserve(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    std::vector<double> row{tr.t[k]};
    append(row, tr.x[k]);
    append(row, tr.y[k]);
    row.push_back(tr.norm_h[k]);
    row.push_back(tr.dist_ref[k]);
    rows.push_back(std::move(row));
  }
  emit_table(opt, "trajectory", header, rows);

  json summary = {
      {"method", to_string(method)},
      {"step", step},
      {"t_end", t_end},
      {"identity_mode", opt.identity},
      {"samples", static_cast<long>(tr.size())},
      {"truncated", tr.truncated},
      {"truncation_reason", tr.truncation_reason},
      {"final_t", tr.t.back()},
      {"final_point", point_json(tr.x.back())},
      {"final_norm_h", number_json(tr.norm_h.back())},
      {"final_dist_ref", number_json(tr.dist_ref.back())},
      {"seed", effective_seed(&cfg, opt)},
      {"trajectory_file", csv_or_json(opt, "trajectory")},
  };
  write_json(opt.out / "summary.json", summary);
  log << tr.size() << " samples to t=" << tr.t.back() << "; final point "
      << point_json(tr.x.back()).dump() << "\n";
  if (tr.truncated) {
    log << "numeric failure: " << tr.truncation_reason << "\n";
    return kNumericFailure;
  }
  return kConverged;
}

int cmd_check(const RunConfig& cfg, const Options& opt, std::ostream& log) {
  const BepInstance& inst = cfg.instance;
  const long horizon = cfg.check.horizon;
  const ConditionReport r = check_schedule(cfg.schedule, inst.lipschitz(), horizon);

  const double beta_ratio = r.beta_first > 0.0 ? r.beta_last / r.beta_first : kNaN;
  json report = {
      {"schedule", schedule_json(cfg.schedule)},
      {"horizon", horizon},
      {"lipschitz", inst.lipschitz()},
      {"hypotheses",
       {{"step_bound",
         {{"holds", r.step_bound_holds},
          {"max_product_l", r.max_product_l},
          {"tail_max_product_l", r.tail_max_product_l}}},
        {"lambda_bounded_below",
         {{"holds", r.lambda_bounded_below},
          {"min_lambda", r.min_lambda},
          {"tail_min_lambda", r.tail_min_lambda},
          {"lambda_slope", number_json(r.lambda_slope)}}},
        {"beta_diverges",
         {{"holds", r.beta_diverges},
          {"beta_first", r.beta_first},
          {"beta_last", r.beta_last},
          {"beta_growth", number_json(beta_ratio)},
          {"beta_slope", number_json(r.beta_slope)}}},
        {"product_summable",
         {{"holds", r.product_summable},
          {"partial_sum", r.product_partial_sum},
          {"product_slope", number_json(r.product_slope)}}}}},
      {"all_hypotheses_hold", r.all_hypotheses_hold},
  };

  if (cfg.check.example_terms) {
    if (!cfg.saddle) throw ConfigError("config field 'check.example_terms': needs a saddle problem");
    const PartialSum ps = condition_57_partial_sum(cfg.schedule, cfg.check.p, cfg.check.q, horizon,
                                                   cfg.check.relative);
    report["example_terms"] = {
        {"p", cfg.check.p},
        {"q", cfg.check.q},
        {"relative", cfg.check.relative},
        {"partial_sum", number_json(ps.sum)},
        {"trend", to_string(ps.trend)},
        {"term_slope", number_json(ps.term_slope)},
        {"holds", ps.trend != Trend::diverging},
    };
  }
  if (cfg.reference) {
    const double fz = lower_fitzpatrick_at_zero(inst, *cfg.reference);
    report["fitzpatrick_zero"] = {{"reference", point_json(*cfg.reference)},
                                  {"value", number_json(fz)},
                                  {"holds", std::abs(fz) <= 1e-12}};
  }
  report["seed"] = effective_seed(&cfg, opt);

  write_json(opt.out / "report.json", report);
  log << "step bound " << (r.step_bound_holds ? "holds" : "fails") << ", lambda bounded below "
      << (r.lambda_bounded_below ? "yes" : "no") << ", beta diverges "
      << (r.beta_diverges ? "yes" : "no") << ", lambda*beta summable "
      << (r.product_summable ? "yes" : "no") << "\n";
  return kConverged;
}

int cmd_oracle(const RunConfig& cfg, const Options& opt, std::ostream& log) {
  const BepInstance& inst = cfg.instance;
  std::vector<Point> sols;
  try {
    sols = solve_bep_grid(inst, cfg.oracle.grid, cfg.oracle.tol);
  } catch (const OracleError& e) {
    write_json(opt.out / "oracle.json",
               {{"grid", cfg.oracle.grid}, {"tol", cfg.oracle.tol}, {"error", e.what()}});
    log << "oracle failure: " << e.what() << "\n";
    return kNumericFailure;
  }
  std::vector<std::vector<double>> rows;
  json pts = json::array();
  for (const Point& p : sols) {
    rows.emplace_back(p.data(), p.data() + p.size());
    pts.push_back(point_json(p));
  }
  if (opt.format == Format::csv) emit_table(opt, "solutions", indexed_names("x", inst.dim()), rows);
  json summary = {{"grid", cfg.oracle.grid},
                  {"tol", cfg.oracle.tol},
                  {"spacing", grid_spacing(inst.k(), cfg.oracle.grid)},
                  {"count", static_cast<long>(sols.size())},
                  {"solutions", pts}};
  write_json(opt.out / "oracle.json", summary);
  log << sols.size() << " grid solution(s)";
  if (!sols.empty()) log << "; first " << pts.front().dump();
  log << "\n";
  return kConverged;
}

int cmd_properties(const Options& opt, std::ostream& log) {
  if (opt.samples < 1) throw UsageError("--samples must be >= 1");
  const std::uint64_t seed = effective_seed(nullptr, opt);
  const auto results = run_default_suites(opt.samples, seed);
  bool all = true;
  json suites = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    json w = json::array();
    for (const Point& p : r.witnesses) w.push_back(point_json(p));
    suites.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"worst", number_json(r.worst)},
                      {"threshold", number_json(r.threshold)},
                      {"samples", r.samples},
                      {"witnesses", w}});
    log << (r.passed ? "PASS " : "FAIL ") << r.name << " worst=" << format_double(r.worst)
        << " threshold=" << format_double(r.threshold) << "\n";
  }
  if (opt.format == Format::csv) {
    std::string text = "suite,passed,worst,threshold,samples\n";
    for (const auto& r : results) {
      text += r.name + "," + (r.passed ? "1" : "0") + "," + format_double(r.worst) + "," +
              format_double(r.threshold) + "," + std::to_string(r.samples) + "\n";
    }
    write_atomic(opt.out / "properties.csv", text);
  }
  write_json(opt.out / "properties.json",
             {{"seed", seed}, {"samples", opt.samples}, {"all_passed", all}, {"suites", suites}});
  return all ? kConverged : kNotConverged;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forward-backward-forward solver for bilevel equilibrium problems", "fbf"};
  app.require_subcommand(1);

  std::string config_path;
  Options opt;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::string format = "csv";

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "Run configuration (JSON)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--format", format, "Table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto* solve = app.add_subcommand("solve", "Run the discrete iteration");
  add_common(solve, true);
  auto* dyn = app.add_subcommand("dynamics", "Integrate the continuous-time system");
  add_common(dyn, true);
  dyn->add_flag("--identity", opt.identity,
                "Explicit Euler, unit step, discrete schedule (mirrors solve row by row)");
  auto* check = app.add_subcommand("check", "Report the convergence hypotheses of the schedule");
  add_common(check, true);
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid solutions (d <= 4)");
  add_common(oracle, true);
  auto* props = app.add_subcommand("properties", "Run the randomized invariant suites");
  add_common(props, false);
  props->add_option("--samples", opt.samples, "Samples per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<std::string> storage = args;
  if (storage.empty() || storage.front().rfind("-", 0) == 0) storage.insert(storage.begin(), "fbf");
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kConverged : kUsage;
  }

  opt.out = out_dir;
  opt.format = format == "json" ? Format::json : Format::csv;
  for (auto* sub : {solve, dyn, check, oracle, props}) {
    if (sub->count("--seed") > 0) opt.seed = seed;
  }

  try {
    if (props->parsed()) {
      if (!config_path.empty()) {
        const RunConfig cfg = load_config(config_path);
        if (!opt.seed) opt.seed = cfg.seed;
      }
      return cmd_properties(opt, out);
    }
    const RunConfig cfg = load_config(config_path);
    if (solve->parsed()) return cmd_solve(cfg, opt, out);
    if (dyn->parsed()) return cmd_dynamics(cfg, opt, out);
    if (check->parsed()) return cmd_check(cfg, opt, out);
    return cmd_oracle(cfg, opt, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace fbf::cli
