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

#include "knowverb/evaluation.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "knowverb/parallel.h"
#include "knowverb/textnorm.h"

namespace knowverb {

RecallReport recall_at_k(const DocIndex& index, std::span<const QAExample> qas,
                         std::span<const std::size_t> ks, std::size_t jobs) {
  if (!std::is_sorted(ks.begin(), ks.end())) throw std::invalid_argument("ks must be sorted");
  if (!ks.empty() && ks.front() == 0) throw std::invalid_argument("ks must be positive");
  RecallReport report;
  report.n_questions = qas.size();
  if (ks.empty()) return report;
  const std::size_t depth = ks.back();

  // Rank (1-based) of the first answer-bearing chunk, or max when none.
  constexpr std::size_t kMiss = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> first_gold(qas.size(), kMiss);
  parallel_for(qas.size(), jobs, [&](std::size_t q) {
    for (const auto& hit : index.search(qas[q].question, depth)) {
      if (contains_answer(index.doc(hit.ordinal).chunk.text, qas[q].answers)) {
        first_gold[q] = hit.rank;
        break;
      }
    }
  });
  for (std::size_t k : ks) {
    std::size_t hits = std::count_if(first_gold.begin(), first_gold.end(),
                                     [k](std::size_t r) { return r <= k; });
    report.per_k[k] = qas.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(qas.size());
  }
  return report;
}

}  // namespace knowverb
