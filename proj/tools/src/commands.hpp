// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace fbf::cli {

enum ExitCode : int {
  kConverged = 0,
  kUsage = 1,
  kNotConverged = 2,
  kNumericFailure = 3,
};

enum class Format { csv, json };

struct Options {
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  Format format = Format::csv;
  long samples = 100'000;
  /// dynamics only: explicit Euler, unit step, discrete schedule, same
  /// number of rows as the discrete solver
  bool identity = false;
};

int cmd_solve(const RunConfig& cfg, const Options& opt, std::ostream& log);
int cmd_dynamics(const RunConfig& cfg, const Options& opt, std::ostream& log);
int cmd_check(const RunConfig& cfg, const Options& opt, std::ostream& log);
int cmd_oracle(const RunConfig& cfg, const Options& opt, std::ostream& log);
int cmd_properties(const Options& opt, std::ostream& log);

/// Full command line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fbf::cli
