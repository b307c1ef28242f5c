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

#include "knowverb/textnorm.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace knowverb {

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

bool is_article(std::string_view w) { return w == "a" || w == "an" || w == "the"; }

}  // namespace

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

TokenList tokenize(std::string_view text) {
  TokenList tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

RougeScore rouge1(std::span<const std::string> reference,
                  std::span<const std::string> candidate) {
  RougeScore s;
  if (reference.empty() || candidate.empty()) return s;
  std::unordered_map<std::string_view, long> counts;
  for (const auto& t : reference) ++counts[t];
  long overlap = 0;
  for (const auto& t : candidate) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  s.recall = static_cast<double>(overlap) / static_cast<double>(reference.size());
  s.precision = static_cast<double>(overlap) / static_cast<double>(candidate.size());
  if (s.precision + s.recall > 0.0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

double pick(const RougeScore& score, RougeVariant variant) {
  return variant == RougeVariant::kF1 ? score.f1 : score.recall;
}

RougeVariant parse_variant(std::string_view name) {
  if (name == "recall") return RougeVariant::kRecall;
  if (name == "f1") return RougeVariant::kF1;
  throw std::invalid_argument("unknown ROUGE variant: " + std::string(name));
}

std::string_view to_string(RougeVariant variant) {
  return variant == RougeVariant::kF1 ? "f1" : "recall";
}

std::string normalize_answer(std::string_view text) {
  std::string stripped;
  stripped.reserve(text.size());
  for (unsigned char c : text) {
    if (std::ispunct(c)) continue;
    stripped += static_cast<char>(std::tolower(c));
  }
  std::string out;
  std::size_t i = 0;
  while (i < stripped.size()) {
    while (i < stripped.size() && std::isspace(static_cast<unsigned char>(stripped[i]))) ++i;
    std::size_t start = i;
    while (i < stripped.size() && !std::isspace(static_cast<unsigned char>(stripped[i]))) ++i;
    if (start == i) break;
    std::string_view word(stripped.data() + start, i - start);
    if (is_article(word)) continue;
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

TokenList answer_tokens(std::string_view text) { return tokenize(normalize_answer(text)); }

bool contains_answer_tokens(std::span<const std::string> haystack_tokens,
                            std::span<const std::string> answers) {
  for (const auto& answer : answers) {
    TokenList needle = answer_tokens(answer);
    if (needle.empty()) continue;
    auto it = std::search(haystack_tokens.begin(), haystack_tokens.end(),
                          needle.begin(), needle.end());
    if (it != haystack_tokens.end()) return true;
  }
  return false;
}

bool contains_answer(std::string_view haystack, std::span<const std::string> answers) {
  TokenList tokens = answer_tokens(haystack);
  return contains_answer_tokens(tokens, answers);
}

}  // namespace knowverb
