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

#include "knowverb/training_data.h"

#include <gtest/gtest.h>

#include "knowverb/chunker.h"
#include "knowverb/convert.h"
#include "knowverb/curation.h"
#include "knowverb/verbalizer.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace knowverb {
namespace {

bool oracle_ok(const RetrieverTrainingInstance& inst) {
  if (inst.positives.empty()) return false;
  for (const auto& p : inst.positives) {
    if (!oracle::contains(p, inst.answers)) return false;
  }
  for (const auto& n : inst.negatives) {
    if (oracle::contains(n, inst.answers)) return false;
  }
  return true;
}

bool has_flag(const RetrieverTrainingInstance& inst, std::string_view flag) {
  return std::find(inst.flags.begin(), inst.flags.end(), flag) != inst.flags.end();
}

// Ten rows of four cells; row 3 holds the answer "quentaro".
Table ten_row_table() {
  fixture::Words w(91);
  std::vector<std::vector<std::string>> rows;
  for (int r = 0; r < 10; ++r) {
    rows.push_back({std::to_string(1990 + r), w.sentence(w.vocab(5), 5), w.sentence(w.vocab(5), 5),
                    r == 3 ? "quentaro wins again" : "nobody"});
  }
  return normalize_table(fixture::make_table("cup", "Zorblax Cup", {"year", "notes", "more notes", "winner"}, rows));
}

DocIndex negative_index(const std::vector<Table>& tables) {
  std::vector<Chunk> chunks;
  for (const auto& t : tables) {
    auto c = chunk_table_raw(t);
    chunks.insert(chunks.end(), c.begin(), c.end());
  }
  for (int i = 0; i < 5; ++i) {
    auto c = chunk_passage({"p" + std::to_string(i), "Zorblax", "the zorblax cup is a contest held every year " + std::to_string(i)});
    chunks.insert(chunks.end(), c.begin(), c.end());
  }
  auto c = chunk_passage({"spoiler", "Zorblax", "the zorblax cup 1993 went to quentaro"});
  chunks.insert(chunks.end(), c.begin(), c.end());
  return build_index(chunks);
}

TEST(TableTrainingData, PositiveStartsWithAnswerRowAndIsPadded) {
  std::vector<Table> tables{ten_row_table()};
  std::vector<QAExample> qa{{"who won the zorblax cup in 1993", {"Quentaro"}, {}, {}}};
  auto mined = mine_table_questions(qa, tables);
  ASSERT_EQ(mined.size(), 1u);
  auto index = negative_index(tables);
  TrainingDataOptions options;
  options.n_negatives = 3;
  auto result = build_table_training_data(mined, tables, index, {}, options);
  ASSERT_EQ(result.instances.size(), 1u);
  const auto& inst = result.instances[0];
  ASSERT_EQ(inst.positives.size(), 1u);
  const auto& table = tables[0];
  std::string prefix = linearize_row(table.headers) + " " + linearize_row(table.rows[3]);
  EXPECT_EQ(inst.positives[0].rfind(prefix, 0), 0u);
  std::size_t total_words = oracle::words(linearize_row(table.headers));
  for (const auto& r : table.rows) total_words += oracle::words(linearize_row(r));
  EXPECT_GE(oracle::words(inst.positives[0]), std::min<std::size_t>(100, total_words));
  EXPECT_EQ(inst.negatives.size(), 3u);
  for (const auto& n : inst.negatives) EXPECT_EQ(n.find("quentaro"), std::string::npos);
  EXPECT_TRUE(oracle_ok(inst));
  EXPECT_TRUE(satisfies_containment(inst));

  // The same seed gives the same padding.
  EXPECT_EQ(build_table_training_data(mined, tables, index, {}, options).instances, result.instances);
}

TEST(TableTrainingData, PaddingStopsAtTableExhaustion) {
  auto t = normalize_table(fixture::make_table("t", "P", {"a"}, {{"x"}, {"y"}, {"z"}}));
  std::vector<MinedTriple> mined{{"q", {"y"}, SourceKind::kTable, "t", {{1, 0}}}};
  auto result = build_table_training_data(mined, std::vector<Table>{t}, build_index(std::vector<Chunk>{}), {}, {});
  ASSERT_EQ(result.instances.size(), 1u);
  EXPECT_EQ(oracle::words(result.instances[0].positives[0]), 12u);
}

TEST(TableTrainingData, ZeroNegativesRequested) {
  std::vector<Table> tables{ten_row_table()};
  std::vector<MinedTriple> mined{{"who won in 1993", {"quentaro"}, SourceKind::kTable, "cup", {{3, 3}}}};
  TrainingDataOptions options;
  options.n_negatives = 0;
  auto result = build_table_training_data(mined, tables, negative_index(tables), {}, options);
  ASSERT_EQ(result.instances.size(), 1u);
  EXPECT_TRUE(result.instances[0].negatives.empty());
  EXPECT_FALSE(has_flag(result.instances[0], kFlagNoNegatives));
}

TEST(TableTrainingData, Errors) {
  std::vector<Table> tables{ten_row_table()};
  std::vector<MinedTriple> unknown{{"q", {"a"}, SourceKind::kTable, "nope", {{0, 0}}}};
  EXPECT_THROW(build_table_training_data(unknown, tables, build_index(std::vector<Chunk>{}), {}, {}), DataError);
  std::vector<MinedTriple> ok{{"q", {"quentaro"}, SourceKind::kTable, "cup", {{3, 3}}}};
  TrainingDataOptions verbalized;
  verbalized.format = PassageFormat::kVerbalized;
  EXPECT_THROW(build_table_training_data(ok, tables, build_index(std::vector<Chunk>{}), {}, verbalized), DataError);
  EXPECT_THROW(parse_format("html"), std::invalid_argument);
}

TEST(TableTrainingData, VerbalizedPositiveUsesUnitTexts) {
  std::vector<Table> tables{ten_row_table()};
  TemplateGenerator gen;
  auto docs = verbalize_tables(tables, gen);
  std::vector<MinedTriple> mined{{"who won in 1993", {"quentaro"}, SourceKind::kTable, "cup", {{3, 3}}}};
  TrainingDataOptions options;
  options.format = PassageFormat::kVerbalized;
  auto result = build_table_training_data(mined, tables, negative_index(tables), docs, options);
  ASSERT_EQ(result.instances.size(), 1u);
  EXPECT_EQ(result.instances[0].positives[0].rfind(docs[0].unit_text(3), 0), 0u);
  EXPECT_TRUE(oracle_ok(result.instances[0]));
}

std::vector<KBSubGraph> graphs() {
  return {{"lebron", "LeBron James", {{"league", "NBA"}, {"team", "Los Angeles Lakers"}}},
          {"lakers", "Los Angeles Lakers", {{"league", "NBA"}, {"arena", "Crypto.com Arena"}}},
          {"nba", "NBA", {{"sport", "basketball"}}},
          {"bronny", "Bronny James", {{"father", "LeBron James"}}}};
}

TEST(KbTrainingData, GoldSubgraphIsThePositive) {
  auto g = graphs();
  std::vector<MinedTriple> mined{{"which team does lebron james play for", {"Los Angeles Lakers"}, SourceKind::kKB, "lebron", {{1, 0}}}};
  std::vector<Chunk> chunks;
  for (const auto& x : g) {
    auto c = chunk_subgraph_raw(x);
    chunks.insert(chunks.end(), c.begin(), c.end());
  }
  auto result = build_kb_training_data(mined, g, build_index(chunks), {}, {});
  ASSERT_EQ(result.instances.size(), 1u);
  const auto& inst = result.instances[0];
  EXPECT_EQ(inst.positives[0], "LeBron James league NBA LeBron James team Los Angeles Lakers");
  EXPECT_TRUE(oracle_ok(inst));
  // The Lakers graph shares "lakers" with the question only through the
  // answer itself; "Los Angeles Lakers" also is its subject.
  for (std::size_t i = 1; i < inst.positives.size(); ++i) EXPECT_TRUE(oracle::contains(inst.positives[i], inst.answers));
}

TEST(KbTrainingData, AnswerBearingPoolLeavesNoNegatives) {
  auto g = graphs();
  std::vector<MinedTriple> mined{{"what league is lebron james in", {"NBA"}, SourceKind::kKB, "lebron", {{0, 0}}}};
  std::vector<Chunk> pool{
      {"x1", "x1", "", "lebron james plays in the nba", 6, ChunkKind::kText, false},
      {"x2", "x2", "", "the nba league of lebron james", 6, ChunkKind::kText, false},
  };
  TrainingDataOptions options;
  options.n_negatives = 2;
  auto result = build_kb_training_data(mined, g, build_index(pool), {}, options);
  ASSERT_EQ(result.instances.size(), 1u);
  EXPECT_TRUE(result.instances[0].negatives.empty());
  EXPECT_TRUE(has_flag(result.instances[0], kFlagNoNegatives));
}

TEST(KbTrainingData, RawAndVerbalizedAgreeOnContainment) {
  auto g = graphs();
  TemplateGenerator gen;
  auto docs = verbalize_subgraphs(g, gen);
  std::vector<MinedTriple> mined{{"what league is lebron james in", {"NBA"}, SourceKind::kKB, "lebron", {{0, 0}}},
                                 {"who is bronny james father", {"LeBron James"}, SourceKind::kKB, "bronny", {{0, 0}}}};
  std::vector<Chunk> chunks;
  for (const auto& d : docs) {
    auto c = chunk_verbalized(d);
    chunks.insert(chunks.end(), c.begin(), c.end());
  }
  auto index = build_index(chunks);
  TrainingDataOptions raw, verb;
  verb.format = PassageFormat::kVerbalized;
  auto r = build_kb_training_data(mined, g, index, docs, raw);
  auto v = build_kb_training_data(mined, g, index, docs, verb);
  ASSERT_EQ(r.instances.size(), v.instances.size());
  for (std::size_t i = 0; i < r.instances.size(); ++i) {
    EXPECT_NE(r.instances[i].positives[0], v.instances[i].positives[0]);
    EXPECT_TRUE(oracle_ok(r.instances[i]));
    EXPECT_TRUE(oracle_ok(v.instances[i]));
  }
}

TEST(MineHardNegatives, Examples) {
  std::vector<Chunk> chunks{{"a", "a", "", "zorblax cup winner quentaro", 4, ChunkKind::kText, false},
                            {"b", "b", "", "zorblax cup history", 3, ChunkKind::kText, false},
                            {"c", "c", "", "zorblax cup venue", 3, ChunkKind::kText, false}};
  auto index = build_index(chunks);
  std::vector<RetrieverTrainingInstance> in{{"zorblax cup winner", {"quentaro"}, {"quentaro won"}, {"old negative"}, {}}};
  EXPECT_EQ(mine_hard_negatives(index, in, 0), in);

  auto out = mine_hard_negatives(index, in, 3);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].positives, in[0].positives);
  EXPECT_EQ(out[0].negatives.back(), "old negative");
  EXPECT_EQ(out[0].negatives.size(), 3u);
  EXPECT_TRUE(oracle_ok(out[0]));
  EXPECT_EQ(mine_hard_negatives(index, in, 3, 4), out);

  // Only the answer-bearing chunk is retrieved.
  std::vector<RetrieverTrainingInstance> narrow{{"quentaro", {"quentaro"}, {"quentaro won"}, {"old"}, {}}};
  auto flagged = mine_hard_negatives(index, narrow, 5);
  EXPECT_EQ(flagged[0].negatives, narrow[0].negatives);
  EXPECT_TRUE(has_flag(flagged[0], kFlagNoHardNegatives));
}

TEST(Containment, Recheck) {
  EXPECT_FALSE(satisfies_containment({"q", {"a"}, {}, {}, {}}));
  EXPECT_FALSE(satisfies_containment({"q", {"x"}, {"no"}, {}, {}}));
  EXPECT_FALSE(satisfies_containment({"q", {"x"}, {"x"}, {"x y"}, {}}));
  EXPECT_TRUE(satisfies_containment({"q", {"x"}, {"x"}, {"y"}, {}}));
}

}  // namespace
}  // namespace knowverb
