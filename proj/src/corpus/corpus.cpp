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

#include "c2t/corpus/corpus.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "c2t/common/error.hpp"
#include "c2t/common/random.hpp"
#include "c2t/common/text.hpp"

namespace c2t::corpus {

ConceptSet ConceptSet::from(std::vector<std::string> concepts) {
  if (concepts.size() < kMinConcepts || concepts.size() > kMaxConcepts) {
    throw ValidationError(fmt::format("concept set size {} outside [{}, {}]", concepts.size(), kMinConcepts,
                                      kMaxConcepts));
  }
  std::unordered_set<std::string> seen;
  ConceptSet out;
  for (auto& c : concepts) {
    if (c.empty() || text::has_whitespace(c)) {
      throw ValidationError(fmt::format("invalid concept '{}': must be a non-empty token", c));
    }
    std::string lower = text::to_lower(c);
    if (!seen.insert(lower).second) throw ValidationError(fmt::format("duplicate concept '{}'", lower));
    out.concepts_.push_back(std::move(lower));
  }
  return out;
}

bool ConceptSet::contains(std::string_view word) const {
  const std::string lower = text::to_lower(word);
  return std::find(concepts_.begin(), concepts_.end(), lower) != concepts_.end();
}

OrderedJson to_json(const Example& e) {
  OrderedJson j;
  j["id"] = e.id;
  j["concepts"] = e.concepts.concepts();
  j["references"] = e.references;
  return j;
}

Example example_from_json(const Json& j, std::size_t line) {
  const auto where = [&] { return line ? fmt::format("line {}", line) : std::string("record"); };
  if (!j.is_object()) throw ParseError(fmt::format("{}: expected a JSON object", where()));
  for (const char* field : {"id", "concepts", "references"}) {
    if (!j.contains(field)) throw ParseError(fmt::format("{}: missing field '{}'", where(), field));
  }
  Example e;
  try {
    e.id = j.at("id").get<std::string>();
    auto raw = j.at("concepts").get<std::vector<std::string>>();
    for (const auto& c : raw) {
      if (c != text::to_lower(c)) spdlog::warn("{}: concept '{}' lowercased", where(), c);
    }
    e.concepts = ConceptSet::from(std::move(raw));
    e.references = j.at("references").get<std::vector<std::string>>();
  } catch (const Json::type_error& err) {
    throw ParseError(fmt::format("{}: wrong field type: {}", where(), err.what()));
  } catch (const ValidationError& err) {
    throw ValidationError(fmt::format("{}: {}", where(), err.what()));
  }
  if (e.id.empty()) throw ValidationError(fmt::format("{}: empty id", where()));
  if (e.references.empty()) throw ValidationError(fmt::format("{}: example '{}' has no references", where(), e.id));
  for (const auto& r : e.references) {
    if (text::trim(r).empty()) throw ValidationError(fmt::format("{}: empty reference in '{}'", where(), e.id));
  }
  return e;
}

std::vector<Example> load_corpus(const std::filesystem::path& path) {
  std::vector<Example> out;
  std::unordered_set<std::string> ids;
  jsonl::for_each(path, [&](const Json& j, std::size_t line) {
    Example e = example_from_json(j, line);
    if (!ids.insert(e.id).second) {
      throw ValidationError(fmt::format("{}:{}: duplicate id '{}'", path.string(), line, e.id));
    }
    out.push_back(std::move(e));
  });
  return out;
}

void write_corpus(const std::filesystem::path& path, std::span<const Example> examples) {
  std::vector<OrderedJson> records;
  records.reserve(examples.size());
  for (const auto& e : examples) records.push_back(to_json(e));
  jsonl::write(path, records);
}

std::vector<Generation> load_generations(const std::filesystem::path& path, const std::string& field) {
  std::vector<Generation> out;
  std::unordered_set<std::string> ids;
  jsonl::for_each(path, [&](const Json& j, std::size_t line) {
    if (!j.is_object() || !j.contains("id") || !j.contains(field) || !j.at("id").is_string() ||
        !j.at(field).is_string()) {
      throw ParseError(fmt::format("{}: line {}: expected string fields 'id' and '{}'", path.string(), line, field));
    }
    Generation g{j.at("id").get<std::string>(), j.at(field).get<std::string>()};
    if (!ids.insert(g.id).second) {
      throw ValidationError(fmt::format("{}: line {}: duplicate id '{}'", path.string(), line, g.id));
    }
    out.push_back(std::move(g));
  });
  return out;
}

void write_generations(const std::filesystem::path& path, std::span<const Generation> generations) {
  jsonl::Writer w(path);
  for (const auto& g : generations) w.append(OrderedJson{{"id", g.id}, {"output", g.text}});
  w.commit();
}

std::size_t SplitSpec::total() const {
  std::size_t n = 0;
  for (const auto& [size, count] : counts) n += count;
  return n;
}

namespace {

const std::set<std::string>& split_names() {
  static const std::set<std::string> names = {"train_CG", "dev_CG", "test_CG", "dev_O", "test_O"};
  return names;
}

}  // namespace

SplitSpec split_spec_from_json(const Json& j) {
  SplitSpec s;
  try {
    s.name = j.at("name").get<std::string>();
    for (const auto& [key, value] : j.at("counts").items()) {
      const long long size = std::stoll(key);
      const long long count = value.get<long long>();
      if (size < 1 || count < 0) throw ValidationError(fmt::format("invalid count {}:{}", key, count));
      s.counts[static_cast<std::size_t>(size)] = static_cast<std::size_t>(count);
    }
    if (j.contains("sentences") && !j["sentences"].is_null()) s.sentences = j["sentences"].get<std::size_t>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ParseError(fmt::format("split spec: {}", e.what()));
  } catch (const std::invalid_argument&) {
    throw ParseError("split spec: counts keys must be integers");
  }
  if (!split_names().contains(s.name)) throw ValidationError(fmt::format("unknown split name '{}'", s.name));
  return s;
}

OrderedJson to_json(const SplitSpec& s) {
  OrderedJson j;
  j["name"] = s.name;
  OrderedJson counts = OrderedJson::object();
  for (const auto& [size, count] : s.counts) counts[std::to_string(size)] = count;
  j["counts"] = counts;
  if (s.sentences) j["sentences"] = *s.sentences;
  j["seed"] = s.seed;
  return j;
}

SplitSpec default_dev_spec() { return {"dev_CG", {{3, 120}, {4, 60}, {5, 60}}, 984, 13}; }

SplitSpec default_test_spec() { return {"test_CG", {{3, 0}, {4, 180}, {5, 180}}, 1583, 13}; }

namespace {

enum Group { kDev = 0, kTest = 1, kUnused = 2 };

// Per-size membership bucketed by reference count so swap moves can be
// enumerated over distinct counts instead of item pairs.
struct Buckets {
  std::array<std::map<std::size_t, std::vector<std::size_t>>, 3> by_refs;
};

long long signed_gap(const std::optional<std::size_t>& target, long long sum) {
  return target ? static_cast<long long>(*target) - sum : 0;
}

struct Move {
  std::size_t size = 0;
  Group from = kDev;
  Group to = kUnused;
  std::size_t refs_out = 0;  // reference count of the item leaving `from`
  std::size_t refs_in = 0;   // reference count of the item entering `from`
  long long dev_delta = 0;
  long long test_delta = 0;
};

// One representative per distinct (dev_delta, test_delta) effect, in
// deterministic enumeration order.
std::vector<Move> enumerate_moves(const std::map<std::size_t, Buckets>& buckets, const SplitSpec& spec_dev,
                                  const SplitSpec& spec_test) {
  static constexpr std::array<std::pair<Group, Group>, 3> kKinds = {
      {{kDev, kUnused}, {kTest, kUnused}, {kDev, kTest}}};
  std::vector<Move> out;
  std::set<std::pair<long long, long long>> seen;
  for (const auto& [size, b] : buckets) {
    for (const auto& [from, to] : kKinds) {
      if (from == kDev && to == kUnused && !spec_dev.sentences) continue;
      if (from == kTest && to == kUnused && !spec_test.sentences) continue;
      for (const auto& [r_out, out_items] : b.by_refs[from]) {
        if (out_items.empty()) continue;
        for (const auto& [r_in, in_items] : b.by_refs[to]) {
          if (in_items.empty() || r_in == r_out) continue;
          const long long delta = static_cast<long long>(r_in) - static_cast<long long>(r_out);
          Move m{size, from, to, r_out, r_in, 0, 0};
          if (from == kDev) m.dev_delta += delta;
          if (from == kTest) m.test_delta += delta;
          if (to == kTest) m.test_delta -= delta;
          if (seen.insert({m.dev_delta, m.test_delta}).second) out.push_back(m);
        }
      }
    }
  }
  return out;
}

bool available(const std::map<std::size_t, Buckets>& buckets, const Move& m) {
  const auto& b = buckets.at(m.size);
  const auto has = [&](Group g, std::size_t refs) {
    const auto it = b.by_refs[g].find(refs);
    return it != b.by_refs[g].end() && !it->second.empty();
  };
  return has(m.from, m.refs_out) && has(m.to, m.refs_in);
}

void apply_move(std::map<std::size_t, Buckets>& buckets, const Move& m) {
  auto& b = buckets[m.size];
  auto& out_list = b.by_refs[m.from][m.refs_out];
  auto& in_list = b.by_refs[m.to][m.refs_in];
  const std::size_t leaving = out_list.back();
  const std::size_t entering = in_list.back();
  out_list.pop_back();
  in_list.pop_back();
  b.by_refs[m.from][m.refs_in].push_back(entering);
  b.by_refs[m.to][m.refs_out].push_back(leaving);
}

// Swaps the last-moved items back; valid right after apply_move(m).
void revert_move(std::map<std::size_t, Buckets>& buckets, const Move& m) {
  auto& b = buckets[m.size];
  const std::size_t entering = b.by_refs[m.from][m.refs_in].back();
  const std::size_t leaving = b.by_refs[m.to][m.refs_out].back();
  b.by_refs[m.from][m.refs_in].pop_back();
  b.by_refs[m.to][m.refs_out].pop_back();
  b.by_refs[m.from][m.refs_out].push_back(leaving);
  b.by_refs[m.to][m.refs_in].push_back(entering);
}

// Steepest descent on |dev gap| + |test gap| over same-size swaps. When no
// single swap improves, the best improving pair of swaps is taken, which
// covers the common case of trading between dev and test and then
// compensating against the unused pool.
void repair_sentence_totals(std::map<std::size_t, Buckets>& buckets,
                            const SplitSpec& spec_dev, const SplitSpec& spec_test) {
  long long dev_sum = 0;
  long long test_sum = 0;
  for (const auto& [size, b] : buckets) {
    for (const auto& [refs, items] : b.by_refs[kDev]) dev_sum += static_cast<long long>(refs * items.size());
    for (const auto& [refs, items] : b.by_refs[kTest]) test_sum += static_cast<long long>(refs * items.size());
  }
  const auto cost = [&](long long d, long long t) {
    return std::llabs(signed_gap(spec_dev.sentences, d)) + std::llabs(signed_gap(spec_test.sentences, t));
  };

  while (cost(dev_sum, test_sum) > 0) {
    const long long current = cost(dev_sum, test_sum);
    const auto moves = enumerate_moves(buckets, spec_dev, spec_test);
    const Move* single = nullptr;
    long long best = current;
    for (const auto& m : moves) {
      const long long c = cost(dev_sum + m.dev_delta, test_sum + m.test_delta);
      if (c < best) {
        best = c;
        single = &m;
      }
    }
    if (single != nullptr) {
      apply_move(buckets, *single);
      dev_sum += single->dev_delta;
      test_sum += single->test_delta;
      continue;
    }

    // Candidate pairs ordered by resulting cost, then enumeration order.
    std::vector<std::tuple<long long, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      for (std::size_t j = 0; j < moves.size(); ++j) {
        const long long c = cost(dev_sum + moves[i].dev_delta + moves[j].dev_delta,
                                 test_sum + moves[i].test_delta + moves[j].test_delta);
        if (c < current) pairs.emplace_back(c, i, j);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    bool progressed = false;
    for (const auto& [c, i, j] : pairs) {
      apply_move(buckets, moves[i]);
      if (available(buckets, moves[j])) {
        apply_move(buckets, moves[j]);
        dev_sum += moves[i].dev_delta + moves[j].dev_delta;
        test_sum += moves[i].test_delta + moves[j].test_delta;
        progressed = true;
        break;
      }
      revert_move(buckets, moves[i]);
    }
    if (!progressed) {
      throw CapacityError(fmt::format(
          "cannot reach sentence targets (dev {} of {}, test {} of {}) by same-size swaps",
          dev_sum, spec_dev.sentences.value_or(0), test_sum, spec_test.sentences.value_or(0)));
    }
  }
}

}  // namespace

Splits build_splits(std::span<const Example> pool, const SplitSpec& spec_dev, const SplitSpec& spec_test) {
  std::map<std::size_t, std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < pool.size(); ++i) by_size[pool[i].concepts.size()].push_back(i);

  std::set<std::size_t> sizes;
  for (const auto& [s, c] : spec_dev.counts) sizes.insert(s);
  for (const auto& [s, c] : spec_test.counts) sizes.insert(s);

  const auto want = [](const SplitSpec& spec, std::size_t size) {
    const auto it = spec.counts.find(size);
    return it == spec.counts.end() ? std::size_t{0} : it->second;
  };

  for (std::size_t size : sizes) {
    const std::size_t need = want(spec_dev, size) + want(spec_test, size);
    const std::size_t have = by_size.contains(size) ? by_size[size].size() : 0;
    if (need > have) {
      throw CapacityError(fmt::format("size {}: requested {} sets but only {} available (deficit {})", size, need,
                                      have, need - have));
    }
  }

  Rng rng(spec_dev.seed);
  std::map<std::size_t, Buckets> buckets;
  for (std::size_t size : sizes) {
    auto& items = by_size[size];
    // Membership depends on ids, not on file order.
    std::sort(items.begin(), items.end(), [&](std::size_t a, std::size_t b) { return pool[a].id < pool[b].id; });
    rng.shuffle(std::span(items));
    const std::size_t n_dev = want(spec_dev, size);
    const std::size_t n_test = want(spec_test, size);
    auto& b = buckets[size];
    for (std::size_t k = 0; k < items.size(); ++k) {
      const Group g = k < n_dev ? kDev : (k < n_dev + n_test ? kTest : kUnused);
      b.by_refs[g][pool[items[k]].references.size()].push_back(items[k]);
    }
  }

  if (spec_dev.sentences || spec_test.sentences) repair_sentence_totals(buckets, spec_dev, spec_test);

  std::vector<std::size_t> dev_idx;
  std::vector<std::size_t> test_idx;
  for (const auto& [size, b] : buckets) {
    for (const auto& [refs, items] : b.by_refs[kDev]) dev_idx.insert(dev_idx.end(), items.begin(), items.end());
    for (const auto& [refs, items] : b.by_refs[kTest]) test_idx.insert(test_idx.end(), items.begin(), items.end());
  }
  std::sort(dev_idx.begin(), dev_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  Splits out;
  for (std::size_t i : dev_idx) out.dev.push_back(pool[i]);
  for (std::size_t i : test_idx) out.test.push_back(pool[i]);
  return out;
}

SplitStats split_stats(std::span<const Example> examples) {
  SplitStats s;
  for (const auto& e : examples) {
    ++s.by_size[e.concepts.size()];
    s.total_sentences += e.references.size();
  }
  s.total_sets = examples.size();
  return s;
}

OrderedJson to_json(const SplitStats& s) {
  OrderedJson j;
  OrderedJson sizes = OrderedJson::object();
  for (const auto& [size, count] : s.by_size) sizes[std::to_string(size)] = count;
  j["by_size"] = sizes;
  j["total_sets"] = s.total_sets;
  j["total_sentences"] = s.total_sentences;
  return j;
}

}  // namespace c2t::corpus
