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

#include "knowverb/bm25.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "knowverb/parallel.h"
#include "knowverb/textnorm.h"

namespace knowverb {

std::vector<std::string> chunk_tokens(const Chunk& chunk) {
  return tokenize(chunk.title + " " + chunk.text);
}

DocIndex DocIndex::build(std::span<const Chunk> chunks, Bm25Params params, std::size_t jobs) {
  DocIndex index(params);
  index.append(chunks, jobs);
  return index;
}

DocIndex DocIndex::augment(std::span<const Chunk> chunks, std::size_t jobs) const {
  DocIndex next = *this;
  next.append(chunks, jobs);
  return next;
}

void DocIndex::append(std::span<const Chunk> chunks, std::size_t jobs) {
  for (const auto& c : chunks) {
    if (ordinal_of_.count(c.chunk_id)) throw DataError("duplicate chunk id: " + c.chunk_id);
    ordinal_of_.emplace(c.chunk_id, static_cast<std::uint32_t>(docs_.size() + (&c - chunks.data())));
  }

  // Term counts are computed in parallel; the merge below is sequential in
  // chunk order, keeping postings sorted by ordinal.
  std::vector<std::map<std::string, std::uint32_t>> counts(chunks.size());
  std::vector<std::uint64_t> lengths(chunks.size());
  parallel_for(chunks.size(), jobs, [&](std::size_t i) {
    auto tokens = chunk_tokens(chunks[i]);
    lengths[i] = tokens.size();
    for (auto& t : tokens) ++counts[i][std::move(t)];
  });

  for (std::size_t i = 0; i < chunks.size(); ++i) {
    auto ordinal = static_cast<std::uint32_t>(docs_.size());
    docs_.push_back({chunks[i], lengths[i]});
    total_length_ += lengths[i];
    for (const auto& [term, tf] : counts[i]) postings_[term].push_back({ordinal, tf});
  }
  avg_doc_len_ = docs_.empty() ? 0.0
                               : static_cast<double>(total_length_) / static_cast<double>(docs_.size());
}

DocIndex DocIndex::from_parts(Bm25Params params, std::vector<IndexedChunk> docs,
                              std::unordered_map<std::string, std::vector<Posting>> postings) {
  DocIndex index(params);
  for (std::uint32_t i = 0; i < docs.size(); ++i) {
    if (!index.ordinal_of_.emplace(docs[i].chunk.chunk_id, i).second) {
      throw DataError("duplicate chunk id: " + docs[i].chunk.chunk_id);
    }
    index.total_length_ += docs[i].length;
  }
  for (const auto& [term, list] : postings) {
    for (const auto& p : list) {
      if (p.ordinal >= docs.size()) throw DataError("posting for term '" + term + "' out of range");
    }
  }
  index.docs_ = std::move(docs);
  index.postings_ = std::move(postings);
  index.avg_doc_len_ = index.docs_.empty() ? 0.0
                                           : static_cast<double>(index.total_length_) /
                                                 static_cast<double>(index.docs_.size());
  return index;
}

double DocIndex::idf(std::uint64_t df) const {
  const double n = static_cast<double>(docs_.size());
  const double d = static_cast<double>(df);
  return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

const std::vector<Posting>* DocIndex::find_postings(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

std::vector<SearchHit> DocIndex::search(std::string_view query, std::size_t k) const {
  std::vector<SearchHit> hits;
  if (k == 0 || docs_.empty()) return hits;
  auto terms = tokenize(query);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  std::vector<double> scores(docs_.size(), 0.0);
  std::vector<std::uint32_t> touched;
  const double k1 = params_.k1, b = params_.b;
  for (const auto& term : terms) {
    const auto* list = find_postings(term);
    if (!list) continue;
    const double w = idf(list->size());
    for (const auto& p : *list) {
      const double tf = p.tf;
      const double norm = 1.0 - b + b * static_cast<double>(docs_[p.ordinal].length) / avg_doc_len_;
      if (scores[p.ordinal] == 0.0) touched.push_back(p.ordinal);
      scores[p.ordinal] += w * (tf * (k1 + 1.0) / (tf + k1 * norm));
    }
  }

  auto better = [&](std::uint32_t x, std::uint32_t y) {
    if (scores[x] != scores[y]) return scores[x] > scores[y];
    return docs_[x].chunk.chunk_id < docs_[y].chunk.chunk_id;
  };
  std::erase_if(touched, [&](std::uint32_t d) { return !(scores[d] > 0.0); });
  std::size_t n = std::min(k, touched.size());
  std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(n),
                    touched.end(), better);
  hits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t d = touched[i];
    hits.push_back({docs_[d].chunk.chunk_id, scores[d], i + 1, d});
  }
  return hits;
}

}  // namespace knowverb
