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

#include "knowverb/curation.h"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "knowverb/parallel.h"

namespace knowverb {

double example_score(const StructuredRecord& source, const std::string& text,
                     RougeVariant variant) {
  return pick(rouge1(tokenize(record_content_text(source)), tokenize(text)), variant);
}

FilterResult filter_training_set(const TrainingSet& set, double threshold,
                                 RougeVariant variant, std::size_t jobs) {
  const auto& ex = set.examples;
  std::vector<double> scores(ex.size());
  parallel_for(ex.size(), jobs, [&](std::size_t i) {
    scores[i] = example_score(ex[i].source, ex[i].target, variant);
  });
  FilterResult out;
  out.kept.name = "T-F";
  for (std::size_t i = 0; i < ex.size(); ++i) {
    out.scores.push_back({ex[i].source.record_id, scores[i]});
    if (scores[i] >= threshold) out.kept.examples.push_back(ex[i]);
  }
  return out;
}

SeededRng::SeededRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededRng::next() { return engine_(); }

std::size_t SeededRng::below(std::size_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t b = bound;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

SelectResult select_in_domain(std::span<const Candidate> candidates, double threshold,
                              std::size_t cap, std::uint64_t seed, RougeVariant variant,
                              std::size_t jobs) {
  std::vector<double> scores(candidates.size());
  parallel_for(candidates.size(), jobs, [&](std::size_t i) {
    scores[i] = example_score(candidates[i].record, candidates[i].generated, variant);
  });
  SelectResult out;
  out.selected.name = "ID-T";
  std::vector<std::size_t> qualifying;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.scores.push_back({candidates[i].record.record_id, scores[i]});
    if (scores[i] > threshold && !candidates[i].generated.empty()) qualifying.push_back(i);
  }
  if (qualifying.size() > cap) {
    SeededRng rng(seed);
    rng.shuffle(qualifying);
    qualifying.resize(cap);
    std::sort(qualifying.begin(), qualifying.end());
  }
  for (std::size_t i : qualifying) {
    out.selected.examples.push_back({candidates[i].record, candidates[i].generated});
  }
  return out;
}

TrainingSet mix(const TrainingSet& a, const TrainingSet& b, std::uint64_t seed) {
  TrainingSet out;
  out.name = "mixed";
  out.examples = a.examples;
  out.examples.insert(out.examples.end(), b.examples.begin(), b.examples.end());
  SeededRng rng(seed);
  rng.shuffle(out.examples);
  return out;
}

std::vector<MinedTriple> mine_table_questions(std::span<const QAExample> qas,
                                              std::span<const Table> tables, std::size_t jobs) {
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t t = 0; t < tables.size(); ++t) by_id.emplace(tables[t].table_id, t);

  std::vector<std::vector<MinedTriple>> per_question(qas.size());
  parallel_for(qas.size(), jobs, [&](std::size_t q) {
    const auto& qa = qas[q];
    std::vector<std::size_t> candidates;
    if (qa.table_ids.empty()) {
      for (std::size_t t = 0; t < tables.size(); ++t) candidates.push_back(t);
    } else {
      for (const auto& id : qa.table_ids) {
        if (auto it = by_id.find(id); it != by_id.end()) candidates.push_back(it->second);
      }
    }
    for (std::size_t t : candidates) {
      const auto& table = tables[t];
      MinedTriple triple{qa.question, qa.answers, SourceKind::kTable, table.table_id, {}};
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& cells = table.rows[r].cells;
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (cells[c].has_content() && contains_answer(cells[c].text, qa.answers)) {
            triple.hits.push_back({r, c});
          }
        }
      }
      if (!triple.hits.empty()) per_question[q].push_back(std::move(triple));
    }
  });
  std::vector<MinedTriple> out;
  for (auto& v : per_question) std::move(v.begin(), v.end(), std::back_inserter(out));
  return out;
}

std::vector<MinedTriple> mine_kb_questions(std::span<const QAExample> qas,
                                           std::span<const KBSubGraph> graphs,
                                           std::size_t jobs) {
  std::unordered_multimap<std::string, std::size_t> by_subject;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    by_subject.emplace(normalize_answer(graphs[g].subject), g);
  }
  std::vector<std::vector<MinedTriple>> per_question(qas.size());
  parallel_for(qas.size(), jobs, [&](std::size_t q) {
    const auto& qa = qas[q];
    std::vector<std::size_t> matched;
    for (const auto& entity : qa.question_entities) {
      auto [lo, hi] = by_subject.equal_range(normalize_answer(entity));
      for (auto it = lo; it != hi; ++it) matched.push_back(it->second);
    }
    std::sort(matched.begin(), matched.end());
    matched.erase(std::unique(matched.begin(), matched.end()), matched.end());
    for (std::size_t g : matched) {
      const auto& graph = graphs[g];
      MinedTriple triple{qa.question, qa.answers, SourceKind::kKB, graph.graph_id, {}};
      for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        if (contains_answer(graph.edges[e].object, qa.answers)) triple.hits.push_back({e, 0});
      }
      if (!triple.hits.empty()) per_question[q].push_back(std::move(triple));
    }
  });
  std::vector<MinedTriple> out;
  for (auto& v : per_question) std::move(v.begin(), v.end(), std::back_inserter(out));
  return out;
}

}  // namespace knowverb
