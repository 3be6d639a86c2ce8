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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace c2t::text {

struct Token {
  std::string text;
  bool punct = false;
};

// Whitespace split after punctuation detachment. Runs of ASCII punctuation
// become their own token; '-' and '\'' between alphanumerics and '.' or ','
// between digits stay inside the word. Casing is preserved.
std::vector<Token> tokenize(std::string_view s);

// Non-punctuation tokens only, original casing.
std::vector<std::string> words(std::string_view s);

// Groups tokens into sentences; a token made of '.', '!' or '?' closes one.
std::vector<std::vector<Token>> split_sentences(std::span<const Token> tokens);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::string join(std::span<const std::string> parts, std::string_view sep);
std::vector<std::string> split(std::string_view s, std::string_view sep);

bool has_whitespace(std::string_view s);
bool is_alpha_word(std::string_view s);

}  // namespace c2t::text
