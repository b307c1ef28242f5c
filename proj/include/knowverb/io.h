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

// JSONL codecs for every corpus and stage output. One object per line,
// UTF-8. Serialization uses a fixed field order so that loading and
// re-serializing a canonical file reproduces it byte for byte.
//
//   tables    {"table_id","page_title","section_title","headers":[str],"rows":[[str]]}
//   kb        {"graph_id","subject","edges":[[relation,object]]}
//   passages  {"doc_id","title","text"}
//   qa        {"question","answers":[str],"question_entities":[str],"table_ids"?:[str]}
//   training  {"record_id"?,"title","pairs":[[attr,value]],"target"}
//
// Missing ids are synthesized as "<kind>-<line>".

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "knowverb/bm25.h"
#include "knowverb/chunker.h"
#include "knowverb/curation.h"
#include "knowverb/evaluation.h"
#include "knowverb/training_data.h"
#include "knowverb/types.h"
#include "knowverb/verbalizer.h"

namespace knowverb {

enum class CorpusKind { kTables, kKB, kPassages, kQA, kTraining };

std::string_view to_string(CorpusKind kind);
CorpusKind parse_corpus_kind(std::string_view name);

using Corpus = std::variant<std::vector<Table>, std::vector<KBSubGraph>, std::vector<Passage>,
                            std::vector<QAExample>, std::vector<TrainingExample>>;

// Throws DataError naming the line for malformed JSON, missing or mistyped
// fields, invariant violations and duplicate ids.
Corpus load_corpus(const std::string& path, CorpusKind kind);

std::vector<Table> read_tables(std::istream& in);
std::vector<KBSubGraph> read_kb(std::istream& in);
std::vector<Passage> read_passages(std::istream& in);
std::vector<QAExample> read_qa(std::istream& in);
std::vector<TrainingExample> read_training(std::istream& in);
std::vector<VerbalizedDoc> read_docs(std::istream& in);
std::vector<MinedTriple> read_mined(std::istream& in);
std::vector<Chunk> read_chunks(std::istream& in);
std::vector<RetrieverTrainingInstance> read_instances(std::istream& in);

std::vector<Table> load_tables(const std::string& path);
std::vector<KBSubGraph> load_kb(const std::string& path);
std::vector<Passage> load_passages(const std::string& path);
std::vector<QAExample> load_qa(const std::string& path);
std::vector<TrainingExample> load_training(const std::string& path);
std::vector<VerbalizedDoc> load_docs(const std::string& path);
std::vector<MinedTriple> load_mined(const std::string& path);
std::vector<Chunk> load_chunks(const std::string& path);
std::vector<RetrieverTrainingInstance> load_instances(const std::string& path);

// Single-line encodings, no trailing newline.
std::string to_jsonl(const Table& table);
std::string to_jsonl(const KBSubGraph& graph);
std::string to_jsonl(const Passage& passage);
std::string to_jsonl(const QAExample& qa);
std::string to_jsonl(const TrainingExample& example);
// Training schema without "target".
std::string to_jsonl(const StructuredRecord& record);
std::string to_jsonl(const VerbalizedDoc& doc);
std::string to_jsonl(const MinedTriple& triple);
std::string to_jsonl(const Chunk& chunk);
std::string to_jsonl(const RetrieverTrainingInstance& instance);
std::string to_jsonl(const RecordScore& score);

template <typename T>
std::string to_jsonl_lines(const std::vector<T>& items) {
  std::string out;
  for (const auto& item : items) {
    out += to_jsonl(item);
    out += '\n';
  }
  return out;
}

}  // namespace knowverb
