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

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "knowverb/bm25.h"
#include "knowverb/types.h"

namespace knowverb {

struct RecallReport {
  // k -> fraction of questions with an answer-bearing chunk in the top k.
  std::map<std::size_t, double> per_k;
  std::size_t n_questions = 0;
};

// A chunk is "gold" when its text contains an answer. `ks` must be sorted
// ascending and positive.
RecallReport recall_at_k(const DocIndex& index, std::span<const QAExample> qas,
                         std::span<const std::size_t> ks, std::size_t jobs = 1);

}  // namespace knowverb
