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

// Representation transforms: triples to pairs, table rows and KB sub-graphs
// to StructuredRecord, generator input serialization, raw linearization, and
// the table clean-up heuristics applied before verbalization.

#include <cstddef>
#include <string>
#include <vector>

#include "knowverb/types.h"

namespace knowverb {

struct Triple {
  std::string head;
  std::string relation;
  std::string tail;
};

struct TitledPairs {
  std::string title;
  std::vector<Pair> pairs;
};

// Drops triple heads. A triple with relation "[title]" or head
// "[TABLECONTEXT]" becomes the ("[title]", tail) pair. Throws DataError when
// the input is empty, a relation is empty, or two different title triples
// are present.
TitledPairs triples_to_pairs(const std::vector<Triple>& triples);

// "page_title" or "page_title - section_title".
std::string table_record_title(const Table& table);

// One record per row: the title pair followed by (header, cell) for every
// cell holding source content. Throws DataError on a bad index or a
// non-rectangular table.
StructuredRecord row_to_record(const Table& table, std::size_t row_index);

StructuredRecord subgraph_to_record(const KBSubGraph& graph);

inline constexpr std::size_t kDefaultMaxPairs = 7;

// Partitions the value pairs into consecutive groups of at most `max_pairs`,
// repeating the title pair at the head of each group. Ids get "-g<i>".
std::vector<StructuredRecord> split_record(const StructuredRecord& record,
                                           std::size_t max_pairs = kDefaultMaxPairs);

// "<H> attr <T> value <H> ..." in pair order. One-way: never parsed back.
std::string serialize_record(const StructuredRecord& record);

inline constexpr std::size_t kDefaultMaxCellWords = 80;

// Pads or truncates rows to the header width, writes the filler token into
// missing and empty cells, cuts cells longer than `max_cell_words` words,
// and names missing headers "column i". Idempotent. Throws DataError for a
// table without rows.
Table normalize_table(const Table& table,
                      std::size_t max_cell_words = kDefaultMaxCellWords);

// Keeps the first of each group of tables whose normalized (page_title,
// headers, rows) agree. Table ids do not participate.
std::vector<Table> dedup_tables(const std::vector<Table>& tables);

// "| c1, c2, ... |"
std::string linearize_row(const std::vector<std::string>& cells);
std::string linearize_row(const TableRow& row);

// "TITLE: page\n| h1, h2 | | c1, c2 | ..."
std::string linearize_raw(const Table& table);

// One "subject relation object" line per edge, used as raw KB units.
std::vector<std::string> flatten_subgraph(const KBSubGraph& graph);

}  // namespace knowverb
