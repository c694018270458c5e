// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fbf/geometry.hpp"

namespace fbf::cli {

/// Round-trip decimal ("%.17g"); NaN prints as "nan".
std::string format_double(double v);

/// Builds a comma-separated table in memory.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return columns_; }
  const std::string& text() const { return text_; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

/// Names like prefix0, prefix1, ... for a d-dimensional point.
std::vector<std::string> indexed_names(const std::string& prefix, Index dim);

/// NaN and infinities become null.
nlohmann::json number_json(double v);
nlohmann::json point_json(const Point& p);

/// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& target, const std::string& content);
void write_json(const std::filesystem::path& target, const nlohmann::json& doc);

}  // namespace fbf::cli
