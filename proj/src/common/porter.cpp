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

#include "c2t/common/porter.hpp"

#include <functional>
#include <initializer_list>

#include "c2t/common/text.hpp"

namespace c2t::text {
namespace {

bool is_vowel_char(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool is_consonant(std::string_view w, std::size_t i) {
  if (is_vowel_char(w[i])) return false;
  if (w[i] == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

int measure(std::string_view stem) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    const bool cons = is_consonant(stem, i);
    if (cons && prev_vowel) ++m;
    prev_vowel = !cons;
  }
  return m;
}

bool contains_vowel(std::string_view stem) {
  for (std::size_t i = 0; i < stem.size(); ++i) {
    if (!is_consonant(stem, i)) return true;
  }
  return false;
}

bool ends_double_consonant(std::string_view w) {
  const auto n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

bool ends_cvc(std::string_view w) {
  const auto n = w.size();
  return n >= 3 && is_consonant(w, n - 3) && !is_consonant(w, n - 2) && is_consonant(w, n - 1) &&
         w[n - 1] != 'w' && w[n - 1] != 'x' && w[n - 1] != 'y';
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

using Condition = std::function<bool(std::string_view)>;

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  Condition condition;  // empty = unconditional
};

// First rule whose suffix matches decides; a failed condition stops the step.
std::string apply_rules(const std::string& w, std::initializer_list<Rule> rules) {
  for (const auto& r : rules) {
    if (!ends_with(w, r.suffix)) continue;
    const std::string_view stem = std::string_view(w).substr(0, w.size() - r.suffix.size());
    if (r.condition && !r.condition(stem)) return w;
    return std::string(stem) + std::string(r.replacement);
  }
  return w;
}

bool positive_measure(std::string_view s) { return measure(s) > 0; }
bool measure_gt_1(std::string_view s) { return measure(s) > 1; }

std::string step1a(const std::string& w) {
  return apply_rules(w, {{"sses", "ss", {}}, {"ies", "i", {}}, {"ss", "ss", {}}, {"s", "", {}}});
}

std::string step1b(const std::string& w) {
  if (ends_with(w, "eed")) {
    const auto stem = std::string_view(w).substr(0, w.size() - 3);
    return measure(stem) > 0 ? std::string(stem) + "ee" : w;
  }
  std::string stem;
  bool removed = false;
  for (std::string_view suffix : {std::string_view("ed"), std::string_view("ing")}) {
    if (ends_with(w, suffix)) {
      const auto s = std::string_view(w).substr(0, w.size() - suffix.size());
      if (contains_vowel(s)) {
        stem = std::string(s);
        removed = true;
        break;
      }
    }
  }
  if (!removed) return w;
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) return stem + "e";
  if (ends_double_consonant(stem)) {
    const char last = stem.back();
    if (last != 'l' && last != 's' && last != 'z') stem.pop_back();
    return stem;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
  return stem;
}

std::string step1c(const std::string& w) { return apply_rules(w, {{"y", "i", contains_vowel}}); }

std::string step2(const std::string& w) {
  return apply_rules(w, {
                            {"ational", "ate", positive_measure}, {"tional", "tion", positive_measure},
                            {"enci", "ence", positive_measure},   {"anci", "ance", positive_measure},
                            {"izer", "ize", positive_measure},    {"bli", "ble", positive_measure},
                            {"alli", "al", positive_measure},     {"entli", "ent", positive_measure},
                            {"eli", "e", positive_measure},       {"ousli", "ous", positive_measure},
                            {"ization", "ize", positive_measure}, {"ation", "ate", positive_measure},
                            {"ator", "ate", positive_measure},    {"alism", "al", positive_measure},
                            {"iveness", "ive", positive_measure}, {"fulness", "ful", positive_measure},
                            {"ousness", "ous", positive_measure}, {"aliti", "al", positive_measure},
                            {"iviti", "ive", positive_measure},   {"biliti", "ble", positive_measure},
                            {"logi", "log", positive_measure},
                        });
}

std::string step3(const std::string& w) {
  return apply_rules(w, {
                            {"icate", "ic", positive_measure},
                            {"ative", "", positive_measure},
                            {"alize", "al", positive_measure},
                            {"iciti", "ic", positive_measure},
                            {"ical", "ic", positive_measure},
                            {"ful", "", positive_measure},
                            {"ness", "", positive_measure},
                        });
}

std::string step4(const std::string& w) {
  const Condition ion = [](std::string_view s) {
    return measure(s) > 1 && !s.empty() && (s.back() == 's' || s.back() == 't');
  };
  return apply_rules(w, {
                            {"al", "", measure_gt_1},   {"ance", "", measure_gt_1}, {"ence", "", measure_gt_1},
                            {"er", "", measure_gt_1},   {"ic", "", measure_gt_1},   {"able", "", measure_gt_1},
                            {"ible", "", measure_gt_1}, {"ant", "", measure_gt_1},  {"ement", "", measure_gt_1},
                            {"ment", "", measure_gt_1}, {"ent", "", measure_gt_1},  {"ion", "", ion},
                            {"ou", "", measure_gt_1},   {"ism", "", measure_gt_1},  {"ate", "", measure_gt_1},
                            {"iti", "", measure_gt_1},  {"ous", "", measure_gt_1},  {"ive", "", measure_gt_1},
                            {"ize", "", measure_gt_1},
                        });
}

std::string step5a(const std::string& w) {
  if (!ends_with(w, "e")) return w;
  const auto stem = std::string_view(w).substr(0, w.size() - 1);
  const int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) return std::string(stem);
  return w;
}

std::string step5b(const std::string& w) {
  if (ends_with(w, "ll") && measure(std::string_view(w).substr(0, w.size() - 1)) > 1) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

}  // namespace

std::string porter_stem(std::string_view word) {
  std::string w = to_lower(word);
  if (w.size() <= 2) return w;
  w = step1a(w);
  w = step1b(w);
  w = step1c(w);
  w = step2(w);
  w = step3(w);
  w = step4(w);
  w = step5a(w);
  w = step5b(w);
  return w;
}

}  // namespace c2t::text
