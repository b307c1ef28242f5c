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

#include <algorithm>
#include <set>
#include <unordered_map>

#include "knowverb/convert.h"
#include "knowverb/parallel.h"
#include "knowverb/textnorm.h"

namespace knowverb {

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

void add_flag(RetrieverTrainingInstance& inst, std::string_view flag) {
  if (!contains(inst.flags, std::string(flag))) inst.flags.emplace_back(flag);
}

std::vector<std::string> collect_negatives(const DocIndex& index, const std::string& question,
                                           const std::vector<std::string>& answers,
                                           const std::vector<std::string>& positives,
                                           const std::string& exclude_parent,
                                           const TrainingDataOptions& options) {
  std::vector<std::string> out;
  if (options.n_negatives == 0) return out;
  auto hits = index.search(question, std::max(options.negative_pool, options.n_negatives));
  for (const auto& hit : hits) {
    if (out.size() >= options.n_negatives) break;
    const auto& chunk = index.doc(hit.ordinal).chunk;
    if (chunk.parent_doc_id == exclude_parent) continue;
    if (contains_answer(chunk.text, answers)) continue;
    if (contains(out, chunk.text) || contains(positives, chunk.text)) continue;
    out.push_back(chunk.text);
  }
  return out;
}

// Drops positives failing the containment check; returns false when none
// survive.
bool finalize(RetrieverTrainingInstance& inst, const TrainingDataOptions& options) {
  std::erase_if(inst.positives,
                [&](const std::string& p) { return !contains_answer(p, inst.answers); });
  if (inst.positives.empty()) return false;
  if (options.n_negatives > 0 && inst.negatives.empty()) add_flag(inst, kFlagNoNegatives);
  if (!satisfies_containment(inst)) {
    throw std::logic_error("training instance failed containment re-check: " + inst.question);
  }
  return true;
}

const VerbalizedDoc& find_doc(const std::unordered_map<std::string, const VerbalizedDoc*>& docs,
                              const std::string& id) {
  auto it = docs.find(id);
  if (it == docs.end()) throw DataError("no verbalized document for source " + id);
  return *it->second;
}

std::unordered_map<std::string, const VerbalizedDoc*> docs_by_id(std::span<const VerbalizedDoc> docs) {
  std::unordered_map<std::string, const VerbalizedDoc*> out;
  for (const auto& d : docs) out.emplace(d.doc_id, &d);
  return out;
}

void append_text(std::string& passage, const std::string& piece) {
  if (piece.empty()) return;
  if (!passage.empty()) passage += ' ';
  passage += piece;
}

}  // namespace

PassageFormat parse_format(std::string_view name) {
  if (name == "raw") return PassageFormat::kRaw;
  if (name == "verbalized") return PassageFormat::kVerbalized;
  throw std::invalid_argument("unknown format: " + std::string(name));
}

std::string_view to_string(PassageFormat format) {
  return format == PassageFormat::kRaw ? "raw" : "verbalized";
}

bool satisfies_containment(const RetrieverTrainingInstance& instance) {
  if (instance.positives.empty()) return false;
  for (const auto& p : instance.positives) {
    if (!contains_answer(p, instance.answers)) return false;
  }
  for (const auto& n : instance.negatives) {
    if (contains_answer(n, instance.answers)) return false;
  }
  return true;
}

TrainingDataResult build_table_training_data(std::span<const MinedTriple> mined,
                                             std::span<const Table> tables,
                                             const DocIndex& neg_index,
                                             std::span<const VerbalizedDoc> docs,
                                             const TrainingDataOptions& options) {
  std::unordered_map<std::string, const Table*> by_id;
  for (const auto& t : tables) by_id.emplace(t.table_id, &t);
  auto doc_index = docs_by_id(docs);
  SeededRng rng(options.seed);

  TrainingDataResult result;
  for (const auto& triple : mined) {
    auto it = by_id.find(triple.source_id);
    if (it == by_id.end()) throw DataError("mined triple references unknown table " + triple.source_id);
    const Table& table = *it->second;
    const VerbalizedDoc* doc = nullptr;
    if (options.format == PassageFormat::kVerbalized) doc = &find_doc(doc_index, table.table_id);

    auto row_text = [&](std::size_t r) {
      if (!doc) return linearize_row(table.rows.at(r));
      std::string text;
      for (std::size_t u = 0; u < doc->unit_rows.size(); ++u) {
        if (doc->unit_rows[u] == r) append_text(text, doc->unit_text(u));
      }
      return text;
    };

    std::vector<std::size_t> answer_rows;
    for (const auto& h : triple.hits) {
      if (h.row >= table.rows.size()) {
        throw DataError("mined triple row " + std::to_string(h.row) + " outside table " + table.table_id);
      }
      if (!std::count(answer_rows.begin(), answer_rows.end(), h.row)) answer_rows.push_back(h.row);
    }
    std::string positive = doc ? std::string() : linearize_row(table.headers);
    for (std::size_t r : answer_rows) append_text(positive, row_text(r));

    std::vector<std::size_t> others;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (!std::count(answer_rows.begin(), answer_rows.end(), r)) others.push_back(r);
    }
    rng.shuffle(others);
    for (std::size_t i = 0; i < others.size() && count_words(positive) < options.min_positive_words; ++i) {
      append_text(positive, row_text(others[i]));
    }

    RetrieverTrainingInstance inst{triple.question, triple.answers, {std::move(positive)}, {}, {}};
    inst.negatives = collect_negatives(neg_index, inst.question, inst.answers, inst.positives,
                                       table.table_id, options);
    if (finalize(inst, options)) {
      result.instances.push_back(std::move(inst));
    } else {
      result.dropped.push_back(triple.source_id + ": " + triple.question);
    }
  }
  return result;
}

TrainingDataResult build_kb_training_data(std::span<const MinedTriple> mined,
                                          std::span<const KBSubGraph> graphs,
                                          const DocIndex& neg_index,
                                          std::span<const VerbalizedDoc> docs,
                                          const TrainingDataOptions& options) {
  std::unordered_map<std::string, std::size_t> by_id;
  std::unordered_multimap<std::string, std::size_t> by_subject;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    by_id.emplace(graphs[g].graph_id, g);
    by_subject.emplace(normalize_answer(graphs[g].subject), g);
  }
  auto doc_index = docs_by_id(docs);
  auto passage_of = [&](std::size_t g) {
    if (options.format == PassageFormat::kVerbalized) return find_doc(doc_index, graphs[g].graph_id).text;
    std::string text;
    for (const auto& line : flatten_subgraph(graphs[g])) append_text(text, line);
    return text;
  };
  auto graphs_about = [&](const std::string& entity, std::set<std::size_t>& into) {
    auto [lo, hi] = by_subject.equal_range(normalize_answer(entity));
    for (auto i = lo; i != hi; ++i) into.insert(i->second);
  };

  TrainingDataResult result;
  for (const auto& triple : mined) {
    auto it = by_id.find(triple.source_id);
    if (it == by_id.end()) throw DataError("mined triple references unknown sub-graph " + triple.source_id);
    const std::size_t gold = it->second;
    RetrieverTrainingInstance inst{triple.question, triple.answers, {passage_of(gold)}, {}, {}};

    // Answer entities and their 1-hop neighbours.
    std::set<std::size_t> neighbourhood;
    for (const auto& h : triple.hits) {
      if (h.row >= graphs[gold].edges.size()) {
        throw DataError("mined triple edge " + std::to_string(h.row) + " outside " + triple.source_id);
      }
      graphs_about(graphs[gold].edges[h.row].object, neighbourhood);
    }
    std::set<std::size_t> answer_graphs = neighbourhood;
    for (std::size_t g : answer_graphs) {
      for (const auto& e : graphs[g].edges) graphs_about(e.object, neighbourhood);
    }
    auto question_tokens = answer_tokens(triple.question);
    std::set<std::string> qset(question_tokens.begin(), question_tokens.end());
    for (std::size_t g : neighbourhood) {
      if (g == gold) continue;
      std::string text = passage_of(g);
      auto tokens = answer_tokens(text);
      bool overlap = std::any_of(tokens.begin(), tokens.end(),
                                 [&](const std::string& t) { return qset.count(t) > 0; });
      if (overlap && contains_answer_tokens(tokens, inst.answers) && !contains(inst.positives, text)) {
        inst.positives.push_back(std::move(text));
      }
    }

    inst.negatives = collect_negatives(neg_index, inst.question, inst.answers, inst.positives,
                                       triple.source_id, options);
    if (finalize(inst, options)) {
      result.instances.push_back(std::move(inst));
    } else {
      result.dropped.push_back(triple.source_id + ": " + triple.question);
    }
  }
  return result;
}

std::vector<RetrieverTrainingInstance> mine_hard_negatives(
    const DocIndex& index, std::span<const RetrieverTrainingInstance> instances, std::size_t k,
    std::size_t jobs) {
  std::vector<RetrieverTrainingInstance> out(instances.begin(), instances.end());
  if (k == 0) return out;
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    auto& inst = out[i];
    std::vector<std::string> mined;
    for (const auto& hit : index.search(inst.question, k)) {
      const auto& text = index.doc(hit.ordinal).chunk.text;
      if (contains_answer(text, inst.answers)) continue;
      if (contains(mined, text) || contains(inst.negatives, text) || contains(inst.positives, text)) continue;
      mined.push_back(text);
    }
    if (mined.empty()) {
      add_flag(inst, kFlagNoHardNegatives);
      return;
    }
    mined.insert(mined.end(), inst.negatives.begin(), inst.negatives.end());
    inst.negatives = std::move(mined);
  });
  return out;
}

}  // namespace knowverb
