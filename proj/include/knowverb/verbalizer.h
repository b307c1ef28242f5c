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

// Verbalization: generate per record, pick the beam that keeps the most input
// content, and stitch unit texts back into one document per source.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "knowverb/convert.h"
#include "knowverb/generator.h"
#include "knowverb/textnorm.h"
#include "knowverb/types.h"

namespace knowverb {

struct UnitSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  bool operator==(const UnitSpan&) const = default;
};

struct VerbalizedDoc {
  std::string doc_id;
  std::string title;
  std::string text;
  Provenance provenance;
  // One span per generated unit (row group or sub-graph group), in order.
  std::vector<UnitSpan> unit_spans;
  // Source row of each unit; 0 for sub-graphs.
  std::vector<std::size_t> unit_rows;
  bool operator==(const VerbalizedDoc&) const = default;

  std::string unit_text(std::size_t i) const {
    return text.substr(unit_spans[i].start, unit_spans[i].end - unit_spans[i].start);
  }
};

struct VerbalizeOptions {
  int beam_size = kDefaultBeamSize;
  std::size_t max_pairs = kDefaultMaxPairs;
  RougeVariant variant = RougeVariant::kRecall;
  std::size_t jobs = 1;
};

// ROUGE-1 of the beam against the record's attributes and values.
double beam_score(const StructuredRecord& input, const Beam& beam, RougeVariant variant);

// Highest-scoring beam; ties go to the smallest rank. `beams` must be
// nonempty.
Beam rerank_beams(const StructuredRecord& input, std::span<const Beam> beams,
                  RougeVariant variant = RougeVariant::kRecall);

// Generates and reranks one record. Generator failures are rethrown with
// the record id attached.
std::string verbalize_record(const StructuredRecord& record, Generator& gen,
                             const VerbalizeOptions& options);

// `table` must already be normalized.
VerbalizedDoc verbalize_source(const Table& table, Generator& gen,
                               const VerbalizeOptions& options = {});
VerbalizedDoc verbalize_source(const KBSubGraph& graph, Generator& gen,
                               const VerbalizeOptions& options = {});

// Corpus-level variants that spread record generation over options.jobs
// threads. Output order follows input order.
std::vector<VerbalizedDoc> verbalize_tables(std::span<const Table> tables, Generator& gen,
                                            const VerbalizeOptions& options = {});
std::vector<VerbalizedDoc> verbalize_subgraphs(std::span<const KBSubGraph> graphs,
                                               Generator& gen,
                                               const VerbalizeOptions& options = {});

struct GoldRecord {
  StructuredRecord record;
  std::vector<std::string> answers;
};

struct CoverageReport {
  std::size_t total = 0;
  std::size_t covered = 0;
  double coverage_pct = 0.0;
  std::vector<std::string> misses;
  // Records whose own pairs do not contain the answer; excluded from total.
  std::vector<std::string> precondition_failures;
};

CoverageReport answer_coverage(std::span<const GoldRecord> gold, Generator& gen,
                               const VerbalizeOptions& options = {});

}  // namespace knowverb
