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

// Core domain types shared by every stage of the pipeline: raw structured
// sources (tables, KB sub-graphs), text passages, QA pairs, and the unified
// attribute/value record format that generators consume.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knowverb {

// Input data violates a schema or type invariant. `line` is 1-based when the
// error can be attributed to a line of a JSONL file, 0 otherwise.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Reserved attribute naming the record title.
inline constexpr std::string_view kTitleAttribute = "[title]";
// Reserved triple head marking table context triples.
inline constexpr std::string_view kTableContextHead = "[TABLECONTEXT]";
// Token written into cells that normalize_table had to fill.
inline constexpr std::string_view kFillerToken = "empty";

// Number of whitespace-separated tokens in `text`.
std::size_t count_words(std::string_view text);

struct Cell {
  std::string text;
  // Set when the text is the filler token inserted by normalization rather
  // than source content.
  bool filler = false;

  std::size_t word_count() const { return count_words(text); }
  bool has_content() const { return !filler && !text.empty(); }
  bool operator==(const Cell&) const = default;
};

struct TableRow {
  std::vector<Cell> cells;
  bool operator==(const TableRow&) const = default;
};

struct Table {
  std::string table_id;
  std::string page_title;
  std::string section_title;
  std::vector<std::string> headers;
  std::vector<TableRow> rows;
  bool operator==(const Table&) const = default;

  bool is_rectangular() const;
};

struct KBEdge {
  std::string relation;
  std::string object;
  bool operator==(const KBEdge&) const = default;
};

struct KBSubGraph {
  std::string graph_id;
  std::string subject;
  std::vector<KBEdge> edges;
  bool operator==(const KBSubGraph&) const = default;

  // Throws DataError when the subject is empty, there are no edges, or an
  // edge has an empty relation.
  void validate() const;
};

struct Passage {
  std::string doc_id;
  std::string title;
  std::string text;
  bool operator==(const Passage&) const = default;
};

struct QAExample {
  std::string question;
  std::vector<std::string> answers;
  std::vector<std::string> question_entities;
  // Tables associated with the question's page; empty means every table is
  // a candidate.
  std::vector<std::string> table_ids;
  bool operator==(const QAExample&) const = default;

  void validate() const;
};

struct Pair {
  std::string attribute;
  std::string value;
  bool operator==(const Pair&) const = default;
};

enum class SourceKind { kNone, kTable, kKB };

std::string_view to_string(SourceKind kind);

struct Provenance {
  SourceKind kind = SourceKind::kNone;
  std::string source_id;
  std::optional<std::size_t> row_index;  // tables only
  bool operator==(const Provenance&) const = default;
};

struct StructuredRecord {
  std::string record_id;
  std::string title;
  std::vector<Pair> pairs;
  Provenance provenance;
  bool operator==(const StructuredRecord&) const = default;

  // Nonempty pairs, nonempty attributes, at most one title pair.
  void validate() const;
  const Pair* title_pair() const;
};

struct TrainingExample {
  StructuredRecord source;
  std::string target;
  bool operator==(const TrainingExample&) const = default;
};

// Attributes and values of every pair joined by single spaces. This is the
// text that ROUGE scoring compares generator outputs against.
std::string record_content_text(const StructuredRecord& record);

}  // namespace knowverb
