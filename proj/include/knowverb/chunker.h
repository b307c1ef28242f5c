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

// Cuts documents into ~budget-word retrieval units.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knowverb/types.h"

namespace knowverb {

struct VerbalizedDoc;

enum class ChunkKind { kText, kTableRaw, kTableVerbalized, kKBRaw, kKBVerbalized };

std::string_view to_string(ChunkKind kind);
ChunkKind parse_chunk_kind(std::string_view name);

struct Chunk {
  std::string chunk_id;
  std::string parent_doc_id;
  std::string title;
  std::string text;
  std::size_t word_count = 0;
  ChunkKind source_kind = ChunkKind::kText;
  // The chunk is a piece of a unit that alone exceeded the budget.
  bool forced_split = false;
  bool operator==(const Chunk&) const = default;
};

struct ChunkParent {
  std::string doc_id;
  std::string title;
  ChunkKind kind = ChunkKind::kText;
};

inline constexpr std::size_t kDefaultChunkBudget = 100;

// Greedy packing: units are appended while the chunk stays within `budget`
// words. A unit larger than the budget on its own is cut at word boundaries
// into budget-sized pieces, each flagged forced_split. Unit whitespace is
// collapsed to single spaces; units with no words are skipped.
//
// When `header` is nonempty it opens every chunk and its words count against
// the budget.
std::vector<Chunk> chunk_units(std::span<const std::string> units, const ChunkParent& parent,
                               std::size_t budget = kDefaultChunkBudget,
                               std::string_view header = {});

std::vector<Chunk> chunk_passage(const Passage& passage,
                                 std::size_t budget = kDefaultChunkBudget);

// Header row repeated at the top of every chunk, one linearized row per unit.
// `table` must be normalized.
std::vector<Chunk> chunk_table_raw(const Table& table, std::size_t budget = kDefaultChunkBudget);

std::vector<Chunk> chunk_subgraph_raw(const KBSubGraph& graph,
                                      std::size_t budget = kDefaultChunkBudget);

// Units are the document's generated unit texts.
std::vector<Chunk> chunk_verbalized(const VerbalizedDoc& doc,
                                    std::size_t budget = kDefaultChunkBudget);

}  // namespace knowverb
