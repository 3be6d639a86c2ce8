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

#include "c2t/common/text.hpp"

#include <cctype>

namespace c2t::text {
namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }
bool is_alnum(unsigned char c) { return c >= 0x80 || std::isalnum(c) != 0; }
bool is_digit(unsigned char c) { return std::isdigit(c) != 0; }

// Punctuation that stays inside a word given its neighbours.
bool joins_word(std::string_view s, std::size_t i) {
  if (i == 0 || i + 1 >= s.size()) return false;
  const auto prev = static_cast<unsigned char>(s[i - 1]);
  const auto next = static_cast<unsigned char>(s[i + 1]);
  switch (s[i]) {
    case '-':
    case '\'':
      return is_alnum(prev) && is_alnum(next);
    case '.':
    case ',':
      return is_digit(prev) && is_digit(next);
    default:
      return false;
  }
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_punct(c) && !joins_word(s, i)) {
      std::size_t j = i;
      while (j < s.size() && is_punct(static_cast<unsigned char>(s[j])) && !joins_word(s, j)) ++j;
      out.push_back({std::string(s.substr(i, j - i)), true});
      i = j;
      continue;
    }
    std::size_t j = i;
    while (j < s.size()) {
      const auto d = static_cast<unsigned char>(s[j]);
      if (is_space(d)) break;
      if (is_punct(d) && !joins_word(s, j)) break;
      ++j;
    }
    out.push_back({std::string(s.substr(i, j - i)), false});
    i = j;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  for (auto& t : tokenize(s)) {
    if (!t.punct) out.push_back(std::move(t.text));
  }
  return out;
}

std::vector<std::vector<Token>> split_sentences(std::span<const Token> tokens) {
  std::vector<std::vector<Token>> out;
  std::vector<Token> cur;
  for (const auto& t : tokens) {
    cur.push_back(t);
    if (t.punct && t.text.find_first_of(".!?") != std::string::npos) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : trim(s)) {
    if (is_space(static_cast<unsigned char>(c))) {
      pending = true;
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::vector<std::string> split(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  if (sep.empty()) {
    out.emplace_back(s);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + sep.size();
  }
  return out;
}

bool has_whitespace(std::string_view s) {
  for (char c : s) {
    if (is_space(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

bool is_alpha_word(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isalpha(u) == 0) return false;
  }
  return true;
}

}  // namespace c2t::text
