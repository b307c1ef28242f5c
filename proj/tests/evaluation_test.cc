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

#include "knowverb/evaluation.h"

#include <gtest/gtest.h>

#include "support/fixtures.h"
#include "support/oracles.h"

namespace knowverb {
namespace {

Chunk chunk(const std::string& id, const std::string& text) {
  return {id, id, "", text, count_words(text), ChunkKind::kText, false};
}

// Every chunk for question i scores the same on query "topic<i>", so ranks
// follow chunk ids and the gold chunk can be placed at any rank.
std::vector<Chunk> ranked_corpus(const std::vector<int>& gold_ranks) {
  std::vector<Chunk> chunks;
  for (std::size_t q = 0; q < gold_ranks.size(); ++q) {
    for (int pos = 1; pos <= 120; ++pos) {
      char id[32];
      std::snprintf(id, sizeof(id), "q%zu-%03d", q, pos);
      bool gold = pos == gold_ranks[q];
      chunks.push_back(chunk(id, "topic" + std::to_string(q) + (gold ? " answer" + std::to_string(q) : " filler")));
    }
  }
  return chunks;
}

std::vector<QAExample> questions(std::size_t n) {
  std::vector<QAExample> qas;
  for (std::size_t q = 0; q < n; ++q) qas.push_back({"topic" + std::to_string(q), {"answer" + std::to_string(q)}, {}, {}});
  return qas;
}

TEST(RecallAtK, HandCountedRanks) {
  auto index = build_index(ranked_corpus({1, 15, 30, -1}));
  auto qas = questions(4);
  std::vector<std::size_t> ks{20, 100};
  auto report = recall_at_k(index, qas, ks);
  EXPECT_EQ(report.n_questions, 4u);
  EXPECT_DOUBLE_EQ(report.per_k.at(20), 0.5);
  EXPECT_DOUBLE_EQ(report.per_k.at(100), 0.75);
  EXPECT_EQ(recall_at_k(index, qas, ks, 4).per_k, report.per_k);
}

TEST(RecallAtK, AllAtRankOneAndAllAbsent) {
  std::vector<std::size_t> ks{1, 5};
  auto top = build_index(ranked_corpus({1, 1, 1}));
  auto report = recall_at_k(top, questions(3), ks);
  EXPECT_EQ(report.per_k.at(1), 1.0);
  EXPECT_EQ(report.per_k.at(5), 1.0);
  auto none = build_index(ranked_corpus({-1, -1}));
  auto empty = recall_at_k(none, questions(2), ks);
  EXPECT_EQ(empty.per_k.at(1), 0.0);
  EXPECT_EQ(empty.per_k.at(5), 0.0);
}

TEST(RecallAtK, NoQuestions) {
  auto index = build_index(ranked_corpus({1}));
  std::vector<std::size_t> ks{20};
  auto report = recall_at_k(index, std::vector<QAExample>{}, ks);
  EXPECT_EQ(report.n_questions, 0u);
  EXPECT_EQ(report.per_k.at(20), 0.0);
}

TEST(RecallAtK, MatchesOracleAndIsMonotone) {
  fixture::Words w(81);
  auto vocab = w.vocab(25);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Chunk> chunks;
    for (int i = 0; i < 60; ++i) chunks.push_back(chunk("c" + std::to_string(i), w.sentence(vocab, w.uniform(3, 30))));
    std::vector<QAExample> qas;
    for (int i = 0; i < 15; ++i) qas.push_back({w.sentence(vocab, 4), {w.pick(vocab) + " " + w.pick(vocab)}, {}, {}});
    std::vector<std::size_t> ks{1, 3, 10, 50};
    auto index = build_index(chunks);
    auto report = recall_at_k(index, qas, ks, 2);

    std::vector<oracle::Doc> docs;
    for (const auto& c : chunks) docs.push_back({c.chunk_id, oracle::tokenize(" " + c.text)});
    double prev = 0;
    for (auto k : ks) {
      std::size_t hits = 0;
      for (const auto& qa : qas) {
        bool hit = false;
        for (const auto& s : oracle::bm25(docs, oracle::tokenize(qa.question), k, 0.9, 0.4)) {
          for (const auto& c : chunks) hit = hit || (c.chunk_id == s.id && oracle::contains(c.text, qa.answers));
        }
        hits += hit;
      }
      ASSERT_DOUBLE_EQ(report.per_k.at(k), static_cast<double>(hits) / 15.0);
      ASSERT_GE(report.per_k.at(k), prev);
      prev = report.per_k.at(k);
    }
  }
}

}  // namespace
}  // namespace knowverb
