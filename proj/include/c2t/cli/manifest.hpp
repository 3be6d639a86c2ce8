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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "c2t/common/jsonl.hpp"

namespace c2t::cli {

inline constexpr std::string_view kManifestSchema = "c2t-manifest/1";

struct FileDigest {
  std::string path;  // outputs: relative to the manifest directory; inputs: absolute
  std::string sha256;
  std::uintmax_t bytes = 0;

  friend bool operator==(const FileDigest&, const FileDigest&) = default;
};

// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

struct RunManifest {
  std::string version;
  std::vector<std::string> command;
  OrderedJson config = OrderedJson::object();
  OrderedJson seeds = OrderedJson::object();
  OrderedJson providers = OrderedJson::object();  // role -> effective provider config
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  std::string started;
  std::string finished;
};

OrderedJson to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);
RunManifest load_manifest(const std::filesystem::path& path);

// `<dir>/manifest.json` for a directory output, `<file>.manifest.json` for a
// single-file output.
std::filesystem::path manifest_path_for(const std::filesystem::path& output, bool is_directory);

// UTC, second resolution, ISO 8601.
std::string utc_timestamp();

// Accumulates a manifest for one command. write() digests every recorded
// output, stamps the finish time and writes the manifest atomically; it
// must run after every output file is complete.
class ManifestBuilder {
 public:
  ManifestBuilder(std::filesystem::path manifest_path, std::vector<std::string> command);

  RunManifest& manifest() { return manifest_; }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  std::filesystem::path write();

 private:
  std::filesystem::path path_;
  RunManifest manifest_;
  std::vector<std::filesystem::path> output_files_;
};

struct VerifyResult {
  std::vector<std::string> missing;
  std::vector<std::string> mismatched;  // digest or size differs
  std::size_t checked = 0;

  bool ok() const { return missing.empty() && mismatched.empty(); }
};

// Recomputes every digest in the manifest. Outputs are resolved against
// `root` when given, else against the manifest's directory. Inputs are
// checked only when `check_inputs` is set.
VerifyResult verify_manifest(const std::filesystem::path& manifest_path,
                             const std::optional<std::filesystem::path>& root = std::nullopt,
                             bool check_inputs = true);

}  // namespace c2t::cli
