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

#include "knowverb/verbalizer.h"

#include "knowverb/parallel.h"

namespace knowverb {

namespace {

struct WorkUnit {
  std::size_t doc;
  std::size_t row;
  StructuredRecord record;
};

struct DocSkeleton {
  std::string doc_id;
  std::string title;
  Provenance provenance;
};

std::vector<VerbalizedDoc> run_units(const std::vector<DocSkeleton>& docs,
                                     const std::vector<WorkUnit>& units, Generator& gen,
                                     const VerbalizeOptions& options) {
  std::vector<std::string> texts(units.size());
  parallel_for(units.size(), options.jobs,
               [&](std::size_t i) { texts[i] = verbalize_record(units[i].record, gen, options); });

  std::vector<VerbalizedDoc> out(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    out[d].doc_id = docs[d].doc_id;
    out[d].title = docs[d].title;
    out[d].provenance = docs[d].provenance;
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto& doc = out[units[i].doc];
    if (!doc.text.empty()) doc.text += ' ';
    std::size_t start = doc.text.size();
    doc.text += texts[i];
    doc.unit_spans.push_back({start, doc.text.size()});
    doc.unit_rows.push_back(units[i].row);
  }
  return out;
}

void add_table(const Table& table, std::size_t doc, const VerbalizeOptions& options,
               std::vector<DocSkeleton>& docs, std::vector<WorkUnit>& units) {
  docs.push_back({table.table_id, table_record_title(table),
                  {SourceKind::kTable, table.table_id, std::nullopt}});
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (auto& group : split_record(row_to_record(table, r), options.max_pairs)) {
      units.push_back({doc, r, std::move(group)});
    }
  }
}

void add_graph(const KBSubGraph& graph, std::size_t doc, const VerbalizeOptions& options,
               std::vector<DocSkeleton>& docs, std::vector<WorkUnit>& units) {
  auto record = subgraph_to_record(graph);
  docs.push_back({graph.graph_id, record.title, record.provenance});
  for (auto& group : split_record(record, options.max_pairs)) {
    units.push_back({doc, 0, std::move(group)});
  }
}

}  // namespace

double beam_score(const StructuredRecord& input, const Beam& beam, RougeVariant variant) {
  return pick(rouge1(tokenize(record_content_text(input)), tokenize(beam.text)), variant);
}

Beam rerank_beams(const StructuredRecord& input, std::span<const Beam> beams,
                  RougeVariant variant) {
  if (beams.empty()) throw std::invalid_argument("rerank_beams: no beams");
  TokenList reference = tokenize(record_content_text(input));
  const Beam* best = nullptr;
  double best_score = -1.0;
  for (const auto& b : beams) {
    double s = pick(rouge1(reference, tokenize(b.text)), variant);
    if (s > best_score || (s == best_score && b.rank < best->rank)) {
      best = &b;
      best_score = s;
    }
  }
  return *best;
}

std::string verbalize_record(const StructuredRecord& record, Generator& gen,
                             const VerbalizeOptions& options) {
  std::vector<Beam> beams;
  try {
    beams = gen.generate(make_request(record, options.beam_size));
  } catch (const ProtocolError& e) {
    throw ProtocolError("record " + record.record_id + ": " + e.what());
  }
  if (beams.empty()) throw ProtocolError("record " + record.record_id + ": generator returned no beams");
  return rerank_beams(record, beams, options.variant).text;
}

VerbalizedDoc verbalize_source(const Table& table, Generator& gen,
                               const VerbalizeOptions& options) {
  return verbalize_tables(std::span(&table, 1), gen, options).front();
}

VerbalizedDoc verbalize_source(const KBSubGraph& graph, Generator& gen,
                               const VerbalizeOptions& options) {
  return verbalize_subgraphs(std::span(&graph, 1), gen, options).front();
}

std::vector<VerbalizedDoc> verbalize_tables(std::span<const Table> tables, Generator& gen,
                                            const VerbalizeOptions& options) {
  std::vector<DocSkeleton> docs;
  std::vector<WorkUnit> units;
  for (std::size_t d = 0; d < tables.size(); ++d) add_table(tables[d], d, options, docs, units);
  return run_units(docs, units, gen, options);
}

std::vector<VerbalizedDoc> verbalize_subgraphs(std::span<const KBSubGraph> graphs,
                                               Generator& gen,
                                               const VerbalizeOptions& options) {
  std::vector<DocSkeleton> docs;
  std::vector<WorkUnit> units;
  for (std::size_t d = 0; d < graphs.size(); ++d) add_graph(graphs[d], d, options, docs, units);
  return run_units(docs, units, gen, options);
}

CoverageReport answer_coverage(std::span<const GoldRecord> gold, Generator& gen,
                               const VerbalizeOptions& options) {
  std::vector<const GoldRecord*> eligible;
  CoverageReport report;
  for (const auto& g : gold) {
    bool present = false;
    for (const auto& p : g.record.pairs) {
      if (p.attribute != kTitleAttribute && contains_answer(p.value, g.answers)) {
        present = true;
        break;
      }
    }
    if (present) {
      eligible.push_back(&g);
    } else {
      report.precondition_failures.push_back(g.record.record_id);
    }
  }

  std::vector<char> hit(eligible.size(), 0);
  parallel_for(eligible.size(), options.jobs, [&](std::size_t i) {
    std::string text;
    for (const auto& group : split_record(eligible[i]->record, options.max_pairs)) {
      if (!text.empty()) text += ' ';
      text += verbalize_record(group, gen, options);
    }
    hit[i] = contains_answer(text, eligible[i]->answers);
  });

  report.total = eligible.size();
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    if (hit[i]) {
      ++report.covered;
    } else {
      report.misses.push_back(eligible[i]->record.record_id);
    }
  }
  if (report.total > 0) {
    report.coverage_pct = 100.0 * static_cast<double>(report.covered) / static_cast<double>(report.total);
  }
  return report;
}

}  // namespace knowverb
