// SPDX-License-Identifier: Apache-2.0
#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fbf::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_double(values[i]);
  }
  text_ += '\n';
  ++rows_;
}

std::vector<std::string> indexed_names(const std::string& prefix, Index dim) {
  std::vector<std::string> out;
  for (Index i = 0; i < dim; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

nlohmann::json number_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json point_json(const Point& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (Index i = 0; i < p.size(); ++i) arr.push_back(number_json(p[i]));
  return arr;
}

void write_atomic(const std::filesystem::path& target, const std::string& content) {
  namespace fs = std::filesystem;
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

void write_json(const std::filesystem::path& target, const nlohmann::json& doc) {
  write_atomic(target, doc.dump(2) + "\n");
}

}  // namespace fbf::cli
