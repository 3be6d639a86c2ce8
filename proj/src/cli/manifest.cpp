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

#include "c2t/cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <fstream>
#include <memory>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "c2t/common/error.hpp"

namespace c2t::cli {
namespace fs = std::filesystem;

namespace {

OrderedJson digest_json(const FileDigest& d) {
  return {{"path", d.path}, {"sha256", d.sha256}, {"bytes", d.bytes}};
}

std::vector<FileDigest> digests_from_json(const Json& j, const char* key) {
  std::vector<FileDigest> out;
  if (!j.contains(key)) return out;
  for (const auto& e : j.at(key)) {
    out.push_back({e.at("path").get<std::string>(), e.at("sha256").get<std::string>(),
                   e.at("bytes").get<std::uintmax_t>()});
  }
  return out;
}

void check(const FileDigest& d, const fs::path& resolved, VerifyResult& result) {
  ++result.checked;
  std::error_code ec;
  if (!fs::is_regular_file(resolved, ec)) {
    result.missing.push_back(resolved.string());
    return;
  }
  if (fs::file_size(resolved) != d.bytes || sha256_file(resolved) != d.sha256) {
    result.mismatched.push_back(resolved.string());
  }
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    const auto got = in.gcount();
    if (got > 0 && EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(got)) != 1) {
      throw Error("SHA-256 update failed");
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) throw Error("SHA-256 final failed");
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

OrderedJson to_json(const RunManifest& m) {
  OrderedJson inputs = OrderedJson::array();
  for (const auto& d : m.inputs) inputs.push_back(digest_json(d));
  OrderedJson outputs = OrderedJson::array();
  for (const auto& d : m.outputs) outputs.push_back(digest_json(d));
  return {{"schema", kManifestSchema},
          {"version", m.version},
          {"command", m.command},
          {"started", m.started},
          {"finished", m.finished},
          {"seeds", m.seeds},
          {"providers", m.providers},
          {"config", m.config},
          {"inputs", inputs},
          {"outputs", outputs}};
}

RunManifest manifest_from_json(const Json& j) {
  try {
    if (j.value("schema", std::string()) != kManifestSchema) {
      throw ValidationError(fmt::format("not a run manifest (expected schema \"{}\")", kManifestSchema));
    }
    RunManifest m;
    m.version = j.value("version", std::string());
    m.command = j.value("command", std::vector<std::string>{});
    m.started = j.value("started", std::string());
    m.finished = j.value("finished", std::string());
    m.seeds = OrderedJson::parse(j.value("seeds", Json::object()).dump());
    m.providers = OrderedJson::parse(j.value("providers", Json::object()).dump());
    m.config = OrderedJson::parse(j.value("config", Json::object()).dump());
    m.inputs = digests_from_json(j, "inputs");
    m.outputs = digests_from_json(j, "outputs");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
}

RunManifest load_manifest(const fs::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON: " + e.what());
  }
  return with_context(path.string(), [&] { return manifest_from_json(j); });
}

fs::path manifest_path_for(const fs::path& output, bool is_directory) {
  if (is_directory) return output / "manifest.json";
  return fs::path(output.string() + ".manifest.json");
}

std::string utc_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now);
}

ManifestBuilder::ManifestBuilder(fs::path manifest_path, std::vector<std::string> command)
    : path_(std::move(manifest_path)) {
  manifest_.version = C2T_VERSION;
  manifest_.command = std::move(command);
  manifest_.started = utc_timestamp();
}

void ManifestBuilder::add_input(const fs::path& path) {
  const fs::path abs = fs::weakly_canonical(fs::absolute(path));
  manifest_.inputs.push_back({abs.string(), sha256_file(abs), fs::file_size(abs)});
}

void ManifestBuilder::add_output(const fs::path& path) { output_files_.push_back(path); }

fs::path ManifestBuilder::write() {
  const fs::path base = fs::weakly_canonical(fs::absolute(path_)).parent_path();
  manifest_.outputs.clear();
  for (const auto& p : output_files_) {
    const fs::path abs = fs::weakly_canonical(fs::absolute(p));
    manifest_.outputs.push_back({abs.lexically_relative(base).generic_string(), sha256_file(abs), fs::file_size(abs)});
  }
  manifest_.finished = utc_timestamp();
  write_file_atomic(path_, to_json(manifest_).dump(2) + "\n");
  return path_;
}

VerifyResult verify_manifest(const fs::path& manifest_path, const std::optional<fs::path>& root, bool check_inputs) {
  const RunManifest m = load_manifest(manifest_path);
  const fs::path base = root ? *root : fs::absolute(manifest_path).parent_path();
  VerifyResult result;
  if (check_inputs) {
    for (const auto& d : m.inputs) check(d, fs::path(d.path), result);
  }
  for (const auto& d : m.outputs) check(d, base / d.path, result);
  return result;
}

}  // namespace c2t::cli
