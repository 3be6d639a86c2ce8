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

#include "c2t/common/jsonl.hpp"

#include <sstream>

#include <fmt/format.h>

#include "c2t/common/error.hpp"
#include "c2t/common/text.hpp"

namespace c2t {
namespace jsonl {

void for_each(const std::filesystem::path& path,
              const std::function<void(const Json&, std::size_t)>& fn) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(fmt::format("{}:{}: malformed JSON: {}", path.string(), line_no, e.what()));
    }
    fn(record, line_no);
  }
}

std::vector<Json> read(const std::filesystem::path& path) {
  std::vector<Json> out;
  for_each(path, [&](const Json& j, std::size_t) { out.push_back(j); });
  return out;
}

void write(const std::filesystem::path& path, std::span<const OrderedJson> records) {
  std::string body;
  for (const auto& r : records) {
    body += r.dump();
    body += '\n';
  }
  write_file_atomic(path, body);
}

std::filesystem::path Writer::quarantine_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".quarantine");
}

Writer::Writer(std::filesystem::path path) : path_(std::move(path)), partial_(quarantine_path(path_)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  out_.open(partial_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error(fmt::format("cannot write {}", partial_.string()));
}

void Writer::append(const OrderedJson& record) {
  out_ << record.dump() << '\n';
  out_.flush();
}

void Writer::commit() {
  if (committed_) return;
  out_.close();
  std::filesystem::rename(partial_, path_);
  committed_ = true;
}

}  // namespace jsonl

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", tmp.string()));
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace c2t
