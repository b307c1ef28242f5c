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

#include "knowverb/chunker.h"

#include <sstream>
#include <stdexcept>

#include "knowverb/convert.h"
#include "knowverb/verbalizer.h"

namespace knowverb {

namespace {

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) words.push_back(std::move(w));
  return words;
}

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ' ';
    out += words[i];
  }
  return out;
}

}  // namespace

std::string_view to_string(ChunkKind kind) {
  switch (kind) {
    case ChunkKind::kText:
      return "text";
    case ChunkKind::kTableRaw:
      return "table-raw";
    case ChunkKind::kTableVerbalized:
      return "table-verbalized";
    case ChunkKind::kKBRaw:
      return "kb-raw";
    case ChunkKind::kKBVerbalized:
      return "kb-verbalized";
  }
  return "text";
}

ChunkKind parse_chunk_kind(std::string_view name) {
  for (auto k : {ChunkKind::kText, ChunkKind::kTableRaw, ChunkKind::kTableVerbalized,
                 ChunkKind::kKBRaw, ChunkKind::kKBVerbalized}) {
    if (to_string(k) == name) return k;
  }
  throw DataError("unknown source_kind: " + std::string(name));
}

std::vector<Chunk> chunk_units(std::span<const std::string> units, const ChunkParent& parent,
                               std::size_t budget, std::string_view header) {
  if (budget == 0) throw std::invalid_argument("chunk budget must be >= 1");
  const auto header_words = split_words(header);
  const std::string header_text = join(header_words, 0, header_words.size());
  const std::size_t unit_budget =
      header_words.size() < budget ? budget - header_words.size() : 1;

  std::vector<Chunk> out;
  auto emit = [&](std::string body, bool forced) {
    Chunk c;
    c.chunk_id = parent.doc_id + "#" + std::to_string(out.size());
    c.parent_doc_id = parent.doc_id;
    c.title = parent.title;
    c.text = header_text.empty() ? std::move(body) : header_text + " " + body;
    c.word_count = count_words(c.text);
    c.source_kind = parent.kind;
    c.forced_split = forced || c.word_count > budget;
    out.push_back(std::move(c));
  };

  std::string current;
  std::size_t current_words = 0;
  auto flush = [&] {
    if (current_words == 0) return;
    emit(std::move(current), false);
    current.clear();
    current_words = 0;
  };

  for (const auto& unit : units) {
    auto words = split_words(unit);
    if (words.empty()) continue;
    if (words.size() > unit_budget) {
      flush();
      for (std::size_t i = 0; i < words.size(); i += unit_budget) {
        emit(join(words, i, std::min(words.size(), i + unit_budget)), true);
      }
      continue;
    }
    if (current_words + words.size() > unit_budget) flush();
    if (current_words) current += ' ';
    current += join(words, 0, words.size());
    current_words += words.size();
  }
  flush();
  return out;
}

std::vector<Chunk> chunk_passage(const Passage& passage, std::size_t budget) {
  // Plain text has no natural unit boundary; every word is a unit.
  auto units = split_words(passage.text);
  return chunk_units(units, {passage.doc_id, passage.title, ChunkKind::kText}, budget);
}

std::vector<Chunk> chunk_table_raw(const Table& table, std::size_t budget) {
  std::vector<std::string> units;
  units.reserve(table.rows.size());
  for (const auto& row : table.rows) units.push_back(linearize_row(row));
  return chunk_units(units, {table.table_id, table_record_title(table), ChunkKind::kTableRaw},
                     budget, linearize_row(table.headers));
}

std::vector<Chunk> chunk_subgraph_raw(const KBSubGraph& graph, std::size_t budget) {
  auto units = flatten_subgraph(graph);
  return chunk_units(units, {graph.graph_id, graph.subject, ChunkKind::kKBRaw}, budget);
}

std::vector<Chunk> chunk_verbalized(const VerbalizedDoc& doc, std::size_t budget) {
  std::vector<std::string> units;
  units.reserve(doc.unit_spans.size());
  for (std::size_t i = 0; i < doc.unit_spans.size(); ++i) units.push_back(doc.unit_text(i));
  ChunkKind kind = doc.provenance.kind == SourceKind::kKB ? ChunkKind::kKBVerbalized
                                                          : ChunkKind::kTableVerbalized;
  return chunk_units(units, {doc.doc_id, doc.title, kind}, budget);
}

}  // namespace knowverb
