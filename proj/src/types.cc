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

#include "knowverb/types.h"

#include <cctype>

#include "knowverb/textnorm.h"

namespace knowverb {

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

bool Table::is_rectangular() const {
  for (const auto& row : rows) {
    if (row.cells.size() != headers.size()) return false;
  }
  return true;
}

void KBSubGraph::validate() const {
  if (subject.empty()) throw DataError("sub-graph " + graph_id + ": empty subject");
  if (edges.empty()) throw DataError("sub-graph " + graph_id + ": no edges");
  for (const auto& e : edges) {
    if (e.relation.empty()) {
      throw DataError("sub-graph " + graph_id + ": edge with empty relation");
    }
  }
}

void QAExample::validate() const {
  if (answers.empty()) throw DataError("question has no answers: " + question);
  for (const auto& a : answers) {
    if (normalize_answer(a).empty()) {
      throw DataError("answer normalizes to empty: \"" + a + "\"");
    }
  }
}

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kTable:
      return "table";
    case SourceKind::kKB:
      return "kb";
    case SourceKind::kNone:
      break;
  }
  return "none";
}

void StructuredRecord::validate() const {
  if (pairs.empty()) throw DataError("record " + record_id + ": no pairs");
  int titles = 0;
  for (const auto& p : pairs) {
    if (p.attribute.empty()) {
      throw DataError("record " + record_id + ": pair with empty attribute");
    }
    if (p.attribute == kTitleAttribute) ++titles;
  }
  if (titles > 1) {
    throw DataError("record " + record_id + ": more than one [title] pair");
  }
}

const Pair* StructuredRecord::title_pair() const {
  for (const auto& p : pairs) {
    if (p.attribute == kTitleAttribute) return &p;
  }
  return nullptr;
}

std::string record_content_text(const StructuredRecord& record) {
  std::string out;
  for (const auto& p : record.pairs) {
    if (!out.empty()) out += ' ';
    out += p.attribute;
    out += ' ';
    out += p.value;
  }
  return out;
}

}  // namespace knowverb
