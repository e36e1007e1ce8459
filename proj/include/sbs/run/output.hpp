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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace sbs::run {

// Output directory whose files appear atomically: each file is written to a
// temporary name in the same directory and renamed into place.
class OutputDir {
 public:
  // Creates the directory if needed.
  explicit OutputDir(std::filesystem::path dir);

  const std::filesystem::path& path() const { return dir_; }

  // Writes `content` to dir/name and records its checksum.
  void write(const std::string& name, std::string_view content);

  // name -> SHA-256 of everything written so far.
  const std::map<std::string, std::string>& checksums() const { return checksums_; }

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::string> checksums_;
};

}  // namespace sbs::run
