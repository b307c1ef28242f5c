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

// Okapi BM25 over chunks.
//
//   idf(t)     = ln(1 + (N - df + 0.5) / (df + 0.5))
//   score(q,d) = sum over distinct t in q of
//                idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len / avg_len))
//
// Documents are tokenize(title + " " + text). Indexes are immutable values;
// augment() returns a new index.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "knowverb/chunker.h"

namespace knowverb {

struct Bm25Params {
  double k1 = 0.9;
  double b = 0.4;
  bool operator==(const Bm25Params&) const = default;
};

struct Posting {
  std::uint32_t ordinal = 0;  // position of the chunk in the index
  std::uint32_t tf = 0;
  bool operator==(const Posting&) const = default;
};

struct IndexedChunk {
  Chunk chunk;
  std::uint64_t length = 0;  // token count
  bool operator==(const IndexedChunk&) const = default;
};

struct SearchHit {
  std::string chunk_id;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based
  std::uint32_t ordinal = 0;
};

class DocIndex {
 public:
  DocIndex() = default;
  explicit DocIndex(Bm25Params params) : params_(params) {}

  // Throws DataError on a duplicate chunk id.
  static DocIndex build(std::span<const Chunk> chunks, Bm25Params params = {},
                        std::size_t jobs = 1);

  // Same index as build() over the existing chunks followed by `chunks`.
  DocIndex augment(std::span<const Chunk> chunks, std::size_t jobs = 1) const;

  // Top-k chunks with positive score, best first; equal scores ordered by
  // chunk id.
  std::vector<SearchHit> search(std::string_view query, std::size_t k) const;

  double idf(std::uint64_t df) const;

  const Bm25Params& params() const { return params_; }
  std::size_t size() const { return docs_.size(); }
  double avg_doc_len() const { return avg_doc_len_; }
  std::uint64_t total_length() const { return total_length_; }
  const std::vector<IndexedChunk>& docs() const { return docs_; }
  const IndexedChunk& doc(std::uint32_t ordinal) const { return docs_[ordinal]; }
  const std::unordered_map<std::string, std::vector<Posting>>& postings() const {
    return postings_;
  }
  const std::vector<Posting>* find_postings(const std::string& term) const;

  // Used by the binary reader; recomputes derived state.
  static DocIndex from_parts(Bm25Params params, std::vector<IndexedChunk> docs,
                             std::unordered_map<std::string, std::vector<Posting>> postings);

  bool operator==(const DocIndex&) const = default;

 private:
  void append(std::span<const Chunk> chunks, std::size_t jobs);

  Bm25Params params_;
  std::vector<IndexedChunk> docs_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::unordered_map<std::string, std::uint32_t> ordinal_of_;
  std::uint64_t total_length_ = 0;
  double avg_doc_len_ = 0.0;
};

// Tokens indexed for a chunk.
std::vector<std::string> chunk_tokens(const Chunk& chunk);

inline DocIndex build_index(std::span<const Chunk> chunks, Bm25Params params = {},
                            std::size_t jobs = 1) {
  return DocIndex::build(chunks, params, jobs);
}

inline DocIndex augment_index(const DocIndex& index, std::span<const Chunk> chunks,
                              std::size_t jobs = 1) {
  return index.augment(chunks, jobs);
}

inline std::vector<SearchHit> search(const DocIndex& index, std::string_view query,
                                     std::size_t k) {
  return index.search(query, k);
}

// Binary index file ("VFIDX1"). Throws DataError on a malformed file.
void save_index(const DocIndex& index, const std::string& path);
DocIndex load_index(const std::string& path);
std::string encode_index(const DocIndex& index);
DocIndex decode_index(std::string_view bytes);

}  // namespace knowverb
