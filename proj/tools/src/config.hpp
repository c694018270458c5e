// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fbf/dynamics.hpp"
#include "fbf/fbf.hpp"
#include "fbf/saddle.hpp"
#include "fbf/schedule.hpp"

namespace fbf::cli {

/// Malformed or inconsistent configuration. The message names the
/// offending field (or line and column for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DynamicsSpec {
  Integrator method = Integrator::rk4;
  double step = 0.1;
  double t_end = 100.0;
  /// Continuous schedule; nullopt means the piecewise-constant extension
  /// of the discrete schedule.
  std::optional<ScheduleFn> schedule;
};

struct CheckSpec {
  long horizon = 100'000;
  /// Summability terms of the bilinear example (requires its data).
  bool example_terms = false;
  double p = 0.0;
  double q = 0.0;
  bool relative = false;
};

struct OracleSpec {
  int grid = 101;
  double tol = 1e-9;
};

/// Everything a subcommand needs, validated against the certified L.
struct RunConfig {
  BepInstance instance;
  std::optional<SaddleProblem> saddle;
  Schedule schedule;
  Point x0;
  StoppingRule stop;
  std::optional<Point> reference;
  DynamicsSpec dynamics;
  CheckSpec check;
  OracleSpec oracle;
  std::uint64_t seed = 0;
};

RunConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a UTF-8 JSON file. Syntax errors report line and column.
RunConfig load_config(const std::string& path);

}  // namespace fbf::cli
