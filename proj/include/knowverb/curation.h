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

// Training-set curation (ROUGE filtering, in-domain selection, mixing) and
// mining of questions answerable from tables or KB sub-graphs.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "knowverb/textnorm.h"
#include "knowverb/types.h"

namespace knowverb {

struct TrainingSet {
  std::string name;
  std::vector<TrainingExample> examples;
  bool operator==(const TrainingSet&) const = default;
};

struct RecordScore {
  std::string record_id;
  double score = 0.0;
};

// ROUGE-1 of the target text against the source record's attributes and
// values.
double example_score(const StructuredRecord& source, const std::string& text,
                     RougeVariant variant);

struct FilterResult {
  TrainingSet kept;                  // named "T-F"
  std::vector<RecordScore> scores;   // every input example, input order
};

// Keeps examples scoring >= threshold.
FilterResult filter_training_set(const TrainingSet& set, double threshold,
                                 RougeVariant variant = RougeVariant::kRecall,
                                 std::size_t jobs = 1);

struct Candidate {
  StructuredRecord record;
  std::string generated;
};

struct SelectResult {
  TrainingSet selected;              // named "ID-T"
  std::vector<RecordScore> scores;
};

// Keeps candidates scoring strictly above `threshold`, then draws a uniform
// sample of `cap` of them (seeded) when more qualify. Selected examples keep
// their input order.
SelectResult select_in_domain(std::span<const Candidate> candidates, double threshold,
                              std::size_t cap, std::uint64_t seed,
                              RougeVariant variant = RougeVariant::kRecall,
                              std::size_t jobs = 1);

// a ++ b, shuffled with `seed`. Named "mixed".
TrainingSet mix(const TrainingSet& a, const TrainingSet& b, std::uint64_t seed);

// mt19937_64 is fully specified by the standard, but the distributions are
// not; bounded draws use rejection sampling so seeded runs reproduce across
// standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  std::uint64_t next();
  std::size_t below(std::size_t bound);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct HitLocation {
  std::size_t row = 0;     // edge index for KB hits
  std::size_t column = 0;  // unused for KB hits
  bool operator==(const HitLocation&) const = default;
};

struct MinedTriple {
  std::string question;
  std::vector<std::string> answers;
  SourceKind source_kind = SourceKind::kTable;
  std::string source_id;
  std::vector<HitLocation> hits;
  bool operator==(const MinedTriple&) const = default;
};

// Tables must be normalized. One triple per (question, table) with at least
// one answer-bearing cell.
std::vector<MinedTriple> mine_table_questions(std::span<const QAExample> qas,
                                              std::span<const Table> tables,
                                              std::size_t jobs = 1);

// Sub-graphs whose subject matches a question entity (after
// normalize_answer) and that have an edge object containing an answer.
std::vector<MinedTriple> mine_kb_questions(std::span<const QAExample> qas,
                                           std::span<const KBSubGraph> graphs,
                                           std::size_t jobs = 1);

}  // namespace knowverb
