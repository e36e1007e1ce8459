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

#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace sbs::stats {

// True for the cell spellings treated as missing: "", "NA", "na", "NaN",
// "nan" and ".".
bool is_missing(std::string_view cell);

// Column-oriented table of string cells read from a CSV file with a header
// row. Numeric views are parsed on demand.
class DataFrame {
 public:
  DataFrame() = default;

  // Throws InputError on a ragged row, a duplicate or empty column name or a
  // missing header.
  static DataFrame read_csv(std::istream& in);
  static DataFrame load_csv(const std::filesystem::path& path);

  std::size_t rows() const { return rows_; }
  const std::vector<std::string>& names() const { return names_; }
  bool has(std::string_view name) const;

  // Throws InputError for an unknown column.
  const std::vector<std::string>& column(std::string_view name) const;

  // Missing cells become NaN. Throws InputError naming the first cell that is
  // neither missing nor a number.
  std::vector<double> numeric(std::string_view name) const;
  bool is_numeric(std::string_view name) const;

  // Adds or replaces a column; the length must equal rows() unless the frame
  // has no columns yet.
  void set_column(std::string name, std::vector<std::string> cells);
  void set_numeric(std::string name, const std::vector<double>& values);

  void write_csv(std::ostream& out) const;

 private:
  std::size_t index_of(std::string_view name) const;

  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> columns_;
  std::size_t rows_ = 0;
};

// Column names with a fixed meaning in firm-level data.
inline constexpr std::string_view kFirmBinaryColumns[] = {"name_overlap", "family_ceo",
                                                          "generations_involved"};

// Range checks on the firm columns that are present: binaries in {0, 1},
// revenues > 0, sentiment in [-1, 1], firm_generation a positive integer,
// firm_size and firm_age non-negative. Missing cells are allowed. Throws
// InputError naming the row (1-based, header excluded) and column.
void validate_firm_data(const DataFrame& data);

}  // namespace sbs::stats
