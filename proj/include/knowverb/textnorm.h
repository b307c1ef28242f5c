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

// Tokenization, answer normalization and ROUGE-1. Everything here is pure.

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace knowverb {

// Lowercased tokens; never empty strings, never containing whitespace.
using TokenList = std::vector<std::string>;

// Lowercases ASCII letters and splits on every maximal run of characters
// that are not ASCII alphanumerics. Bytes >= 0x80 (UTF-8 sequences) are kept
// inside tokens.
TokenList tokenize(std::string_view text);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// ROUGE-1 with clipped unigram counts. Recall is relative to `reference`,
// precision to `candidate`.
RougeScore rouge1(std::span<const std::string> reference,
                  std::span<const std::string> candidate);

enum class RougeVariant { kRecall, kF1 };

double pick(const RougeScore& score, RougeVariant variant);
RougeVariant parse_variant(std::string_view name);
std::string_view to_string(RougeVariant variant);

// Lowercase, delete ASCII punctuation, drop the articles a/an/the, collapse
// whitespace.
std::string normalize_answer(std::string_view text);

// True iff some answer, normalized and tokenized, occurs as a contiguous
// token run of the normalized, tokenized haystack. Answers that normalize to
// nothing never match.
bool contains_answer(std::string_view haystack,
                     std::span<const std::string> answers);

// Same test against a haystack that was already passed through
// answer_tokens().
bool contains_answer_tokens(std::span<const std::string> haystack_tokens,
                            std::span<const std::string> answers);

// tokenize(normalize_answer(text))
TokenList answer_tokens(std::string_view text);

// Lowercases ASCII letters only.
std::string ascii_lower(std::string_view text);

}  // namespace knowverb
