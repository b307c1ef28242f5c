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

// Retriever training data: (question, positive passages, negative passages)
// built from mined table/KB questions, plus iterative hard-negative mining
// against a joint index.
//
// Every instance returned here has positives that all contain an answer and
// negatives that contain none; this is re-verified after construction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knowverb/bm25.h"
#include "knowverb/curation.h"
#include "knowverb/verbalizer.h"

namespace knowverb {

enum class PassageFormat { kRaw, kVerbalized };

PassageFormat parse_format(std::string_view name);
std::string_view to_string(PassageFormat format);

inline constexpr std::string_view kFlagNoNegatives = "no_negatives";
inline constexpr std::string_view kFlagNoHardNegatives = "no_hard_negatives";

struct RetrieverTrainingInstance {
  std::string question;
  std::vector<std::string> answers;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  // Diagnostics such as kFlagNoNegatives.
  std::vector<std::string> flags;
  bool operator==(const RetrieverTrainingInstance&) const = default;
};

// Independent containment pass: all positives contain an answer, no negative
// does, and there is at least one positive.
bool satisfies_containment(const RetrieverTrainingInstance& instance);

struct TrainingDataOptions {
  PassageFormat format = PassageFormat::kRaw;
  std::size_t n_negatives = 1;
  std::uint64_t seed = 0;
  // Positives shorter than this many words are padded with other rows.
  std::size_t min_positive_words = 100;
  // How many BM25 results are examined when collecting negatives.
  std::size_t negative_pool = 100;
};

struct TrainingDataResult {
  std::vector<RetrieverTrainingInstance> instances;
  // Mined triples whose positives all failed the containment check.
  std::vector<std::string> dropped;
};

// `tables` must be normalized; `docs` holds the verbalized tables when
// options.format is kVerbalized. Throws DataError for a triple naming an
// unknown table or a missing verbalized doc.
TrainingDataResult build_table_training_data(std::span<const MinedTriple> mined,
                                             std::span<const Table> tables,
                                             const DocIndex& neg_index,
                                             std::span<const VerbalizedDoc> docs,
                                             const TrainingDataOptions& options);

TrainingDataResult build_kb_training_data(std::span<const MinedTriple> mined,
                                          std::span<const KBSubGraph> graphs,
                                          const DocIndex& neg_index,
                                          std::span<const VerbalizedDoc> docs,
                                          const TrainingDataOptions& options);

// Prepends up to k new answer-free chunks from the top-k retrievals to each
// instance's negatives. Positives are untouched. k == 0 is a no-op.
std::vector<RetrieverTrainingInstance> mine_hard_negatives(
    const DocIndex& index, std::span<const RetrieverTrainingInstance> instances,
    std::size_t k, std::size_t jobs = 1);

}  // namespace knowverb
