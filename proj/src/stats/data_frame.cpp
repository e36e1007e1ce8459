// Copyright 2026 The SBS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbs/stats/data_frame.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "sbs/csv.hpp"
#include "sbs/error.hpp"

namespace sbs::stats {
namespace {

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  return end == begin + cell.size() && errno != ERANGE && std::isfinite(out);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

bool is_missing(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" || cell == "nan" ||
         cell == ".";
}

DataFrame DataFrame::read_csv(std::istream& in) {
  csv::Reader reader(in);
  csv::Record rec;
  if (!reader.next(rec)) throw InputError("data file has no header row");
  DataFrame df;
  for (auto& name : rec.fields) {
    if (name.empty()) throw InputError("data file has an empty column name");
    if (df.has(name)) throw InputError("data file has a duplicate column `" + name + "`");
    df.names_.push_back(std::move(name));
  }
  df.columns_.resize(df.names_.size());
  while (reader.next(rec)) {
    if (rec.fields.size() != df.names_.size()) {
      throw InputError("data line " + std::to_string(rec.line) + ": expected " +
                       std::to_string(df.names_.size()) + " fields, found " +
                       std::to_string(rec.fields.size()));
    }
    for (std::size_t c = 0; c < rec.fields.size(); ++c) {
      df.columns_[c].push_back(std::move(rec.fields[c]));
    }
    ++df.rows_;
  }
  return df;
}

DataFrame DataFrame::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read data file " + path.string());
  return read_csv(in);
}

bool DataFrame::has(std::string_view name) const {
  for (const auto& n : names_) {
    if (n == name) return true;
  }
  return false;
}

std::size_t DataFrame::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw InputError("unknown column `" + std::string(name) + "`");
}

const std::vector<std::string>& DataFrame::column(std::string_view name) const {
  return columns_[index_of(name)];
}

std::vector<double> DataFrame::numeric(std::string_view name) const {
  const auto& cells = column(name);
  std::vector<double> out(cells.size());
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (is_missing(cells[r])) {
      out[r] = std::numeric_limits<double>::quiet_NaN();
    } else if (!parse_double(cells[r], out[r])) {
      throw InputError("column `" + std::string(name) + "` row " + std::to_string(r + 1) +
                       ": `" + cells[r] + "` is not a number");
    }
  }
  return out;
}

bool DataFrame::is_numeric(std::string_view name) const {
  double v;
  for (const auto& cell : column(name)) {
    if (!is_missing(cell) && !parse_double(cell, v)) return false;
  }
  return true;
}

void DataFrame::set_column(std::string name, std::vector<std::string> cells) {
  if (!names_.empty() && cells.size() != rows_) {
    throw InputError("column `" + name + "` has " + std::to_string(cells.size()) +
                     " cells, expected " + std::to_string(rows_));
  }
  rows_ = cells.size();
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      columns_[i] = std::move(cells);
      return;
    }
  }
  names_.push_back(std::move(name));
  columns_.push_back(std::move(cells));
}

void DataFrame::set_numeric(std::string name, const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  set_column(std::move(name), std::move(cells));
}

void DataFrame::write_csv(std::ostream& out) const {
  csv::write_row(out, names_);
  std::vector<std::string> row(names_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < names_.size(); ++c) row[c] = columns_[c][r];
    csv::write_row(out, row);
  }
}

void validate_firm_data(const DataFrame& data) {
  const auto check = [&](std::string_view name, auto ok, const char* what) {
    if (!data.has(name)) return;
    const auto values = data.numeric(name);
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (!std::isnan(values[r]) && !ok(values[r])) {
        throw InputError("column `" + std::string(name) + "` row " + std::to_string(r + 1) +
                         ": value must be " + what);
      }
    }
  };
  for (auto name : kFirmBinaryColumns) {
    check(name, [](double v) { return v == 0 || v == 1; }, "0 or 1");
  }
  check("revenues", [](double v) { return v > 0; }, "positive");
  check("sentiment", [](double v) { return v >= -1 && v <= 1; }, "in [-1, 1]");
  check("firm_generation", [](double v) { return v >= 1 && v == std::floor(v); },
        "a positive integer");
  check("firm_size", [](double v) { return v >= 0; }, "non-negative");
  check("firm_age", [](double v) { return v >= 0; }, "non-negative");
}

}  // namespace sbs::stats
