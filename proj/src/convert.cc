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

#include "knowverb/convert.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace knowverb {

namespace {

bool is_title_triple(const Triple& t) {
  return t.relation == kTitleAttribute || t.head == kTableContextHead;
}

std::string first_words(const std::string& text, std::size_t limit) {
  std::istringstream in(text);
  std::string word, out;
  for (std::size_t n = 0; n < limit && in >> word; ++n) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

}  // namespace

TitledPairs triples_to_pairs(const std::vector<Triple>& triples) {
  if (triples.empty()) throw DataError("triples_to_pairs: empty triple set");
  TitledPairs out;
  std::vector<std::string> titles;
  for (const auto& t : triples) {
    if (t.relation.empty()) throw DataError("triple with empty relation, head " + t.head);
    if (is_title_triple(t)) {
      if (std::find(titles.begin(), titles.end(), t.tail) != titles.end()) continue;
      titles.push_back(t.tail);
      out.pairs.push_back({std::string(kTitleAttribute), t.tail});
    } else {
      out.pairs.push_back({t.relation, t.tail});
    }
  }
  if (titles.size() > 1) {
    std::string msg = "multiple title triples:";
    for (const auto& t : titles) msg += " \"" + t + "\"";
    throw DataError(msg);
  }
  if (!titles.empty()) out.title = titles.front();
  return out;
}

std::string table_record_title(const Table& table) {
  if (table.section_title.empty()) return table.page_title;
  return table.page_title + " - " + table.section_title;
}

StructuredRecord row_to_record(const Table& table, std::size_t row_index) {
  if (row_index >= table.rows.size()) {
    throw DataError("table " + table.table_id + ": row index " +
                    std::to_string(row_index) + " out of range");
  }
  if (!table.is_rectangular()) {
    throw DataError("table " + table.table_id + " is not rectangular; normalize it first");
  }
  StructuredRecord rec;
  rec.record_id = table.table_id + "-r" + std::to_string(row_index);
  rec.title = table_record_title(table);
  rec.provenance = {SourceKind::kTable, table.table_id, row_index};
  rec.pairs.push_back({std::string(kTitleAttribute), rec.title});
  const auto& cells = table.rows[row_index].cells;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].has_content()) rec.pairs.push_back({table.headers[i], cells[i].text});
  }
  return rec;
}

StructuredRecord subgraph_to_record(const KBSubGraph& graph) {
  graph.validate();
  StructuredRecord rec;
  rec.record_id = graph.graph_id;
  rec.title = graph.subject;
  rec.provenance = {SourceKind::kKB, graph.graph_id, std::nullopt};
  rec.pairs.push_back({std::string(kTitleAttribute), graph.subject});
  for (const auto& e : graph.edges) rec.pairs.push_back({e.relation, e.object});
  return rec;
}

std::vector<StructuredRecord> split_record(const StructuredRecord& record,
                                           std::size_t max_pairs) {
  if (max_pairs == 0) throw std::invalid_argument("split_record: max_pairs must be >= 1");
  const Pair* title = record.title_pair();
  std::vector<const Pair*> values;
  for (const auto& p : record.pairs) {
    if (&p != title) values.push_back(&p);
  }
  std::vector<StructuredRecord> out;
  std::size_t start = 0;
  do {
    StructuredRecord group;
    group.record_id = record.record_id + "-g" + std::to_string(out.size());
    group.title = record.title;
    group.provenance = record.provenance;
    if (title) group.pairs.push_back(*title);
    std::size_t end = std::min(values.size(), start + max_pairs);
    for (std::size_t i = start; i < end; ++i) group.pairs.push_back(*values[i]);
    out.push_back(std::move(group));
    start = end;
  } while (start < values.size());
  return out;
}

std::string serialize_record(const StructuredRecord& record) {
  std::string out;
  for (const auto& p : record.pairs) {
    if (!out.empty()) out += ' ';
    out += "<H> ";
    out += p.attribute;
    out += " <T> ";
    out += p.value;
  }
  return out;
}

Table normalize_table(const Table& table, std::size_t max_cell_words) {
  if (table.rows.empty()) throw DataError("table " + table.table_id + " has no rows");
  Table out = table;
  std::size_t width = out.headers.size();
  if (width == 0) {
    for (const auto& row : out.rows) width = std::max(width, row.cells.size());
    out.headers.resize(width);
  }
  for (std::size_t i = 0; i < width; ++i) {
    if (out.headers[i].empty()) out.headers[i] = "column " + std::to_string(i + 1);
  }
  for (auto& row : out.rows) {
    row.cells.resize(width);
    for (auto& cell : row.cells) {
      if (cell.word_count() == 0) {
        cell.text = kFillerToken;
        cell.filler = true;
      } else if (cell.word_count() > max_cell_words) {
        cell.text = first_words(cell.text, max_cell_words);
      }
    }
  }
  return out;
}

std::vector<Table> dedup_tables(const std::vector<Table>& tables) {
  using Key = std::tuple<std::string, std::vector<std::string>, std::vector<std::vector<std::string>>>;
  std::set<Key> seen;
  std::vector<Table> out;
  for (const auto& t : tables) {
    Table n = normalize_table(t);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(n.rows.size());
    for (const auto& r : n.rows) {
      std::vector<std::string> cells;
      for (const auto& c : r.cells) cells.push_back(c.text);
      rows.push_back(std::move(cells));
    }
    if (seen.emplace(n.page_title, n.headers, std::move(rows)).second) out.push_back(t);
  }
  return out;
}

std::string linearize_row(const std::vector<std::string>& cells) {
  std::string out = "| ";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ", ";
    out += cells[i];
  }
  out += " |";
  return out;
}

std::string linearize_row(const TableRow& row) {
  std::vector<std::string> cells;
  cells.reserve(row.cells.size());
  for (const auto& c : row.cells) cells.push_back(c.text);
  return linearize_row(cells);
}

std::string linearize_raw(const Table& table) {
  std::string out = "TITLE: " + table.page_title + "\n" + linearize_row(table.headers);
  for (const auto& row : table.rows) {
    out += ' ';
    out += linearize_row(row);
  }
  return out;
}

std::vector<std::string> flatten_subgraph(const KBSubGraph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    lines.push_back(graph.subject + " " + e.relation + " " + e.object);
  }
  return lines;
}

}  // namespace knowverb
