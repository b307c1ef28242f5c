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

// Deliberately naive reference implementations. Nothing here calls into the
// library code it is used to check.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace oracle {

inline bool is_word_byte(unsigned char c) {
  if (c >= 0x80) return true;
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

inline std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (is_word_byte(static_cast<unsigned char>(ch))) {
      cur.push_back(lower(ch));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Rouge {
  double p = 0, r = 0, f = 0;
};

// Counts by repeated linear scans; no maps.
inline Rouge rouge1(const std::vector<std::string>& ref, const std::vector<std::string>& cand) {
  std::vector<bool> used(cand.size(), false);
  std::size_t overlap = 0;
  for (const auto& t : ref) {
    for (std::size_t j = 0; j < cand.size(); ++j) {
      if (!used[j] && cand[j] == t) {
        used[j] = true;
        ++overlap;
        break;
      }
    }
  }
  Rouge s;
  if (!cand.empty()) s.p = static_cast<double>(overlap) / static_cast<double>(cand.size());
  if (!ref.empty()) s.r = static_cast<double>(overlap) / static_cast<double>(ref.size());
  if (s.p + s.r > 0) s.f = 2 * s.p * s.r / (s.p + s.r);
  return s;
}

inline bool is_punct(unsigned char c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) || (c >= 123 && c <= 126);
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

inline std::string normalize(const std::string& text) {
  std::string kept;
  for (char ch : text) {
    if (!is_punct(static_cast<unsigned char>(ch))) kept.push_back(lower(ch));
  }
  std::vector<std::string> words;
  std::string cur;
  for (std::size_t i = 0; i <= kept.size(); ++i) {
    if (i == kept.size() || is_space(kept[i])) {
      if (!cur.empty() && cur != "a" && cur != "an" && cur != "the") words.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(kept[i]);
    }
  }
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

inline bool contains(const std::string& haystack, const std::vector<std::string>& answers) {
  auto h = tokenize(normalize(haystack));
  for (const auto& a : answers) {
    auto t = tokenize(normalize(a));
    if (t.empty() || t.size() > h.size()) continue;
    for (std::size_t i = 0; i + t.size() <= h.size(); ++i) {
      bool all = true;
      for (std::size_t j = 0; j < t.size(); ++j) all = all && h[i + j] == t[j];
      if (all) return true;
    }
  }
  return false;
}

struct Doc {
  std::string id;
  std::vector<std::string> tokens;
};

struct Scored {
  std::string id;
  double score;
};

// Exhaustive BM25: every document scored against every distinct query term,
// terms visited in sorted order.
inline std::vector<Scored> bm25(const std::vector<Doc>& docs, const std::vector<std::string>& query,
                                std::size_t k, double k1, double b) {
  std::vector<std::string> terms = query;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  double total = 0;
  for (const auto& d : docs) total += static_cast<double>(d.tokens.size());
  const double n = static_cast<double>(docs.size());
  const double avg = docs.empty() ? 0.0 : total / n;
  std::vector<Scored> out;
  for (const auto& d : docs) {
    double score = 0;
    for (const auto& t : terms) {
      double df = 0;
      for (const auto& e : docs) df += std::count(e.tokens.begin(), e.tokens.end(), t) > 0 ? 1 : 0;
      double tf = static_cast<double>(std::count(d.tokens.begin(), d.tokens.end(), t));
      if (tf == 0) continue;
      double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
      double len = static_cast<double>(d.tokens.size());
      score += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len / avg));
    }
    if (score > 0) out.push_back({d.id, score});
  }
  std::sort(out.begin(), out.end(), [](const Scored& x, const Scored& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.id < y.id;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

inline std::size_t words(const std::string& s) {
  std::size_t n = 0;
  bool in = false;
  for (char c : s) {
    if (is_space(c)) {
      in = false;
    } else if (!in) {
      in = true;
      ++n;
    }
  }
  return n;
}

}  // namespace oracle
