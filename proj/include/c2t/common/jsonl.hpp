// Copyright 2026 The c2tkit Authors.
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
#include <fstream>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace c2t {

using Json = nlohmann::json;
// Output records keep schema field order.
using OrderedJson = nlohmann::ordered_json;

namespace jsonl {

// Invokes fn(record, line_number) for every non-blank line (1-based line
// numbers). Malformed JSON raises ParseError naming the line.
void for_each(const std::filesystem::path& path,
              const std::function<void(const Json&, std::size_t)>& fn);

std::vector<Json> read(const std::filesystem::path& path);

// Writes all records to `path` via a temporary file and rename.
void write(const std::filesystem::path& path, std::span<const OrderedJson> records);

// Streams records to `<path>.quarantine`; commit() renames it to `path`.
// If commit() is never reached the quarantine file stays on disk holding
// whatever was written so far.
class Writer {
 public:
  explicit Writer(std::filesystem::path path);
  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  void append(const OrderedJson& record);
  void commit();

  const std::filesystem::path& path() const { return path_; }
  static std::filesystem::path quarantine_path(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace jsonl

std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace c2t
