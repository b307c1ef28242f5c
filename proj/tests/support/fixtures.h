// Copyright 2026 The knowverb Authors
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

#include <random>
#include <string>
#include <vector>

#include "knowverb/types.h"

namespace fixture {

class Words {
 public:
  explicit Words(std::uint64_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  // Pronounceable nonsense; never an English article.
  std::string word(std::size_t min_len = 3, std::size_t max_len = 8) {
    static const char* kSyllables[] = {"ka", "lo", "mi", "ru", "te", "zo", "pa", "ne",
                                       "vi", "do", "sa", "qu", "fe", "ho", "ba", "ji"};
    std::string w;
    std::size_t len = uniform(min_len, max_len);
    while (w.size() < len) w += kSyllables[uniform(0, 15)];
    return w;
  }

  std::vector<std::string> vocab(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(word());
    return v;
  }

  std::string pick(const std::vector<std::string>& v) { return v[uniform(0, v.size() - 1)]; }

  std::string sentence(const std::vector<std::string>& vocab, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + pick(vocab);
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline knowverb::Table make_table(const std::string& id, const std::string& page,
                                  const std::vector<std::string>& headers,
                                  const std::vector<std::vector<std::string>>& rows,
                                  const std::string& section = "") {
  knowverb::Table t;
  t.table_id = id;
  t.page_title = page;
  t.section_title = section;
  t.headers = headers;
  for (const auto& r : rows) {
    knowverb::TableRow row;
    for (const auto& c : r) row.cells.push_back({c});
    t.rows.push_back(row);
  }
  return t;
}

inline knowverb::StructuredRecord make_record(const std::string& id, const std::string& title,
                                              const std::vector<knowverb::Pair>& values) {
  knowverb::StructuredRecord r;
  r.record_id = id;
  r.title = title;
  r.pairs.push_back({std::string(knowverb::kTitleAttribute), title});
  for (const auto& p : values) r.pairs.push_back(p);
  return r;
}

}  // namespace fixture
