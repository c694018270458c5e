// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace fbf::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config field '" + path + "': " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void allow_keys(const json& obj, std::initializer_list<const char*> keys,
                const std::string& path) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) fail(join(path, item.key()), "unknown field");
  }
}

const json& need(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) fail(join(path, key), "missing");
  return obj.at(key);
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

long as_count(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& path) {
  return obj.contains(key) ? as_number(obj.at(key), join(path, key)) : fallback;
}

long count_or(const json& obj, const char* key, long fallback, const std::string& path) {
  return obj.contains(key) ? as_count(obj.at(key), join(path, key)) : fallback;
}

Point as_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  Point p(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    p[static_cast<Index>(i)] = as_number(j[i], path + "[" + std::to_string(i) + "]");
  }
  return p;
}

DenseMatrix as_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const Point row = as_point(j[r], path + "[" + std::to_string(r) + "]");
    if (r == 0) cols = static_cast<std::size_t>(row.size());
    if (static_cast<std::size_t>(row.size()) != cols) fail(path, "rows have different lengths");
  }
  DenseMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

BoxSet as_box(const json& j, const std::string& path) {
  allow_keys(j, {"lower", "upper"}, path);
  const Point lo = as_point(need(j, "lower", path), join(path, "lower"));
  const Point hi = as_point(need(j, "upper", path), join(path, "upper"));
  try {
    return BoxSet(lo, hi);
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
}

AffineMap as_affine(const json& j, const std::string& path) {
  allow_keys(j, {"matrix", "offset"}, path);
  try {
    return AffineMap(as_matrix(need(j, "matrix", path), join(path, "matrix")),
                     as_point(need(j, "offset", path), join(path, "offset")));
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
}

struct LowerLevel {
  MonotoneMap map;
  BoxSet k;
  std::optional<SaddleProblem> saddle;
};

LowerLevel parse_problem(const json& j) {
  const std::string path = "problem";
  const std::string kind = as_string(need(j, "kind", path), join(path, "kind"));
  if (kind == "saddle") {
    allow_keys(j, {"kind", "M", "a", "b", "u_box", "v_box"}, path);
    try {
      SaddleProblem sp(as_matrix(need(j, "M", path), "problem.M"),
                       as_point(need(j, "a", path), "problem.a"),
                       as_point(need(j, "b", path), "problem.b"),
                       as_box(need(j, "u_box", path), "problem.u_box"),
                       as_box(need(j, "v_box", path), "problem.v_box"));
      return {sp.op().as_monotone(), sp.k(), sp};
    } catch (const UsageError& e) {
      fail(path, e.what());
    }
  }
  if (kind == "affine") {
    allow_keys(j, {"kind", "matrix", "offset", "box"}, path);
    const AffineMap m = as_affine(j, path) ;
    return {m.as_monotone(), as_box(need(j, "box", path), "problem.box"), std::nullopt};
  }
  if (kind == "zero") {
    allow_keys(j, {"kind", "box"}, path);
    BoxSet k = as_box(need(j, "box", path), "problem.box");
    return {MonotoneMap::zero(k.dim()), k, std::nullopt};
  }
  fail(join(path, "kind"), "expected saddle, affine or zero (got '" + kind + "')");
}

EquilibriumBifunction parse_upper(const json& j, const BoxSet& k) {
  const std::string path = "upper";
  const std::string kind = as_string(need(j, "kind", path), join(path, "kind"));
  try {
    if (kind == "zero") {
      allow_keys(j, {"kind"}, path);
      return ProxBifunction::zero(k);
    }
    if (kind == "prox") {
      allow_keys(j, {"kind", "center", "weight"}, path);
      return ProxBifunction(as_point(need(j, "center", path), "upper.center"),
                            as_number(need(j, "weight", path), "upper.weight"), k);
    }
    if (kind == "paired") {
      allow_keys(j, {"kind", "a1", "a2", "tol", "max_inner"}, path);
      ResolventOptions opt;
      opt.tol = number_or(j, "tol", opt.tol, path);
      opt.max_inner = count_or(j, "max_inner", opt.max_inner, path);
      return PairedOperatorBifunction(as_affine(need(j, "a1", path), "upper.a1").as_monotone(),
                                      as_affine(need(j, "a2", path), "upper.a2").as_monotone(),
                                      k, opt);
    }
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
  fail(join(path, "kind"), "expected zero, prox or paired (got '" + kind + "')");
}

BetaLaw parse_beta(const json& obj, const std::string& path) {
  if (!obj.contains("beta")) return BetaLaw{1.0, 0.0, 0.0};
  const std::string p = join(path, "beta");
  const json& j = obj.at("beta");
  if (j.is_number()) return BetaLaw{as_number(j, p), 0.0, 0.0};
  allow_keys(j, {"offset", "scale", "exponent"}, p);
  return BetaLaw{number_or(j, "offset", 0.0, p), number_or(j, "scale", 1.0, p),
                 number_or(j, "exponent", 0.0, p)};
}

Schedule parse_schedule(const json& j, double lipschitz) {
  const std::string path = "schedule";
  const std::string law = as_string(need(j, "law", path), join(path, "law"));
  try {
    if (law == "coupled") {
      allow_keys(j, {"law", "rho", "beta"}, path);
      if (lipschitz == 0.0) {
        fail(join(path, "law"), "coupled schedules need a lower map with L > 0");
      }
      return Schedule::coupled(as_number(need(j, "rho", path), "schedule.rho"), lipschitz,
                               parse_beta(j, path));
    }
    if (law == "fixed") {
      allow_keys(j, {"law", "lambda", "beta"}, path);
      return Schedule::fixed(as_number(need(j, "lambda", path), "schedule.lambda"),
                             parse_beta(j, path));
    }
    if (law == "summable") {
      allow_keys(j, {"law", "scale", "decay", "beta"}, path);
      return Schedule::summable(as_number(need(j, "scale", path), "schedule.scale"),
                                as_number(need(j, "decay", path), "schedule.decay"),
                                parse_beta(j, path));
    }
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
  fail(join(path, "law"), "expected coupled, fixed or summable (got '" + law + "')");
}

std::optional<ScheduleFn> parse_schedule_fn(const json& j, double lipschitz) {
  const std::string path = "dynamics.schedule";
  const std::string family = as_string(need(j, "family", path), join(path, "family"));
  try {
    if (family == "piecewise") {
      allow_keys(j, {"family"}, path);
      return std::nullopt;
    }
    if (family == "constant") {
      allow_keys(j, {"family", "lambda", "beta"}, path);
      return ScheduleFn::constant(as_number(need(j, "lambda", path), join(path, "lambda")),
                                  as_number(need(j, "beta", path), join(path, "beta")));
    }
    if (family == "power_beta") {
      allow_keys(j, {"family", "lambda_bar", "beta0", "p"}, path);
      return ScheduleFn::power_beta(
          as_number(need(j, "lambda_bar", path), join(path, "lambda_bar")),
          as_number(need(j, "beta0", path), join(path, "beta0")),
          as_number(need(j, "p", path), join(path, "p")));
    }
    if (family == "exp_lambda") {
      allow_keys(j, {"family", "delta", "c", "beta"}, path);
      return ScheduleFn::exp_lambda(as_number(need(j, "delta", path), join(path, "delta")),
                                    as_number(need(j, "c", path), join(path, "c")),
                                    as_number(need(j, "beta", path), join(path, "beta")));
    }
    if (family == "coupled") {
      allow_keys(j, {"family", "rho", "beta0", "p"}, path);
      return ScheduleFn::coupled(as_number(need(j, "rho", path), join(path, "rho")), lipschitz,
                                 number_or(j, "beta0", 1.0, path), number_or(j, "p", 0.0, path));
    }
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
  fail(join(path, "family"),
       "expected piecewise, constant, power_beta, exp_lambda or coupled (got '" + family + "')");
}

}  // namespace

RunConfig parse_config(const json& doc) {
  allow_keys(doc, {"problem", "upper", "schedule", "solver", "dynamics", "check", "oracle", "seed"},
             "");
  LowerLevel lower = parse_problem(need(doc, "problem", ""));
  const json upper_doc = doc.contains("upper") ? doc.at("upper") : json{{"kind", "zero"}};
  EquilibriumBifunction upper = parse_upper(upper_doc, lower.k);
  std::optional<BepInstance> inst;
  try {
    inst.emplace(lower.map, upper);
  } catch (const UsageError& e) {
    fail("upper", e.what());
  }
  const double lip = inst->lipschitz();

  Schedule schedule = parse_schedule(need(doc, "schedule", ""), lip);

  const json solver = doc.contains("solver") ? doc.at("solver") : json::object();
  allow_keys(solver, {"x0", "tol", "max_iter", "reference"}, "solver");
  Point x0 = solver.contains("x0") ? as_point(solver.at("x0"), "solver.x0") : lower.k.center();
  if (x0.size() != lower.k.dim()) fail("solver.x0", "dimension does not match K");
  StoppingRule stop;
  stop.tol = number_or(solver, "tol", stop.tol, "solver");
  stop.max_iter = count_or(solver, "max_iter", stop.max_iter, "solver");
  if (stop.max_iter < 1) fail("solver.max_iter", "must be >= 1");
  std::optional<Point> reference;
  if (solver.contains("reference")) {
    reference = as_point(solver.at("reference"), "solver.reference");
    if (reference->size() != lower.k.dim()) fail("solver.reference", "dimension does not match K");
  }
  try {
    schedule.validate_step_bound(lip, stop.max_iter);
  } catch (const UsageError& e) {
    fail("schedule", e.what());
  }

  DynamicsSpec dyn;
  if (doc.contains("dynamics")) {
    const json& d = doc.at("dynamics");
    allow_keys(d, {"method", "step", "t_end", "schedule"}, "dynamics");
    if (d.contains("method")) {
      try {
        dyn.method = parse_integrator(as_string(d.at("method"), "dynamics.method"));
      } catch (const UsageError& e) {
        fail("dynamics.method", e.what());
      }
    }
    dyn.step = number_or(d, "step", dyn.step, "dynamics");
    dyn.t_end = number_or(d, "t_end", dyn.t_end, "dynamics");
    if (!(dyn.step > 0.0)) fail("dynamics.step", "must be > 0");
    if (!(dyn.t_end > 0.0)) fail("dynamics.t_end", "must be > 0");
    if (d.contains("schedule")) dyn.schedule = parse_schedule_fn(d.at("schedule"), lip);
  }

  CheckSpec check;
  if (doc.contains("check")) {
    const json& c = doc.at("check");
    allow_keys(c, {"horizon", "example_terms"}, "check");
    check.horizon = count_or(c, "horizon", check.horizon, "check");
    if (check.horizon < 1) fail("check.horizon", "must be >= 1");
    if (c.contains("example_terms")) {
      const json& e = c.at("example_terms");
      allow_keys(e, {"p", "q", "relative"}, "check.example_terms");
      check.example_terms = true;
      check.p = number_or(e, "p", 0.0, "check.example_terms");
      check.q = number_or(e, "q", 0.0, "check.example_terms");
      if (e.contains("relative")) {
        if (!e.at("relative").is_boolean()) fail("check.example_terms.relative", "expected a boolean");
        check.relative = e.at("relative").get<bool>();
      }
    }
  }

  OracleSpec oracle;
  if (doc.contains("oracle")) {
    const json& o = doc.at("oracle");
    allow_keys(o, {"grid", "tol"}, "oracle");
    oracle.grid = static_cast<int>(count_or(o, "grid", oracle.grid, "oracle"));
    oracle.tol = number_or(o, "tol", oracle.tol, "oracle");
    if (oracle.grid < 2) fail("oracle.grid", "must be >= 2");
    if (!(oracle.tol >= 0.0)) fail("oracle.tol", "must be >= 0");
  }

  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      fail("seed", "expected a non-negative integer");
    }
    seed = s.get<std::uint64_t>();
  }

  return RunConfig{std::move(*inst), std::move(lower.saddle), std::move(schedule), std::move(x0),
                   stop, std::move(reference), std::move(dyn), check, oracle, seed};
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(
                                     std::count(text.begin(), text.begin() + static_cast<long>(at), '\n'));
    const std::size_t last_nl = text.rfind('\n', at == 0 ? 0 : at - 1);
    const std::size_t column = last_nl == std::string::npos ? at + 1 : at - last_nl;
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": JSON syntax error: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace fbf::cli
