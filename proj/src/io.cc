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

#include "knowverb/io.h"

#include <fstream>
#include <istream>
#include <unordered_set>

#include "json.hpp"

namespace knowverb {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Field accessors that report schema problems with the line number.
class Fields {
 public:
  Fields(const json& j, std::size_t line) : j_(j), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw DataError("line " + std::to_string(line_) + ": " + msg, line_);
  }

  bool has(const char* name) const { return j_.contains(name); }

  const json& get(const char* name) const {
    auto it = j_.find(name);
    if (it == j_.end()) fail(std::string("missing field ") + name);
    return *it;
  }

  std::string str(const char* name) const {
    const auto& v = get(name);
    if (!v.is_string()) fail(std::string("field ") + name + " must be a string");
    return v.get<std::string>();
  }

  std::string str_or(const char* name, std::string fallback) const {
    return has(name) ? str(name) : std::move(fallback);
  }

  std::vector<std::string> strings(const char* name) const {
    const auto& v = get(name);
    if (!v.is_array()) fail(std::string("field ") + name + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) fail(std::string("field ") + name + " must be an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  std::vector<std::string> strings_or_empty(const char* name) const {
    return has(name) ? strings(name) : std::vector<std::string>{};
  }

  // [[a, b], ...]
  std::vector<std::pair<std::string, std::string>> string_pairs(const char* name) const {
    const auto& v = get(name);
    if (!v.is_array()) fail(std::string("field ") + name + " must be an array of pairs");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : v) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        fail(std::string("field ") + name + " must hold [string, string] pairs");
      }
      out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return out;
  }

  std::vector<std::vector<std::size_t>> index_lists(const char* name) const {
    const auto& v = get(name);
    if (!v.is_array()) fail(std::string("field ") + name + " must be an array");
    std::vector<std::vector<std::size_t>> out;
    for (const auto& e : v) {
      if (!e.is_array()) fail(std::string("field ") + name + " must hold arrays of integers");
      std::vector<std::size_t> inner;
      for (const auto& x : e) {
        if (!x.is_number_unsigned()) fail(std::string("field ") + name + " must hold non-negative integers");
        inner.push_back(x.get<std::size_t>());
      }
      out.push_back(std::move(inner));
    }
    return out;
  }

  std::size_t line() const { return line_; }

 private:
  const json& j_;
  std::size_t line_;
};

template <typename Parse>
auto read_lines(std::istream& in, Parse parse) {
  using T = decltype(parse(std::declval<const Fields&>()));
  std::vector<T> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError("line " + std::to_string(lineno) + ": malformed JSON: " + e.what(), lineno);
    }
    if (!j.is_object()) {
      throw DataError("line " + std::to_string(lineno) + ": expected a JSON object", lineno);
    }
    Fields f(j, lineno);
    try {
      out.push_back(parse(f));
    } catch (const DataError& e) {
      if (e.line()) throw;
      throw DataError("line " + std::to_string(lineno) + ": " + e.what(), lineno);
    }
  }
  return out;
}

template <typename T, typename Id>
void check_unique(const std::vector<T>& items, Id id) {
  std::unordered_set<std::string> seen;
  for (const auto& item : items) {
    if (!seen.insert(id(item)).second) throw DataError("duplicate id " + id(item));
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  return in;
}

std::string synth_id(std::string_view kind, std::size_t line) {
  return std::string(kind) + "-" + std::to_string(line);
}

ordered_json pairs_json(const std::vector<Pair>& pairs) {
  ordered_json out = ordered_json::array();
  for (const auto& p : pairs) out.push_back({p.attribute, p.value});
  return out;
}

std::string dump(const ordered_json& j) {
  try {
    return j.dump();
  } catch (const json::type_error&) {
    throw DataError("value is not valid UTF-8");
  }
}

SourceKind parse_source_kind(const Fields& f, const std::string& s) {
  if (s == "table") return SourceKind::kTable;
  if (s == "kb") return SourceKind::kKB;
  if (s == "none") return SourceKind::kNone;
  f.fail("unknown source_kind " + s);
}

}  // namespace

std::string_view to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::kTables:
      return "tables";
    case CorpusKind::kKB:
      return "kb";
    case CorpusKind::kPassages:
      return "passages";
    case CorpusKind::kQA:
      return "qa";
    case CorpusKind::kTraining:
      return "training";
  }
  return "tables";
}

CorpusKind parse_corpus_kind(std::string_view name) {
  for (auto k : {CorpusKind::kTables, CorpusKind::kKB, CorpusKind::kPassages, CorpusKind::kQA,
                 CorpusKind::kTraining}) {
    if (to_string(k) == name) return k;
  }
  throw DataError("unknown corpus kind: " + std::string(name));
}

std::vector<Table> read_tables(std::istream& in) {
  auto out = read_lines(in, [](const Fields& f) {
    Table t;
    t.table_id = f.str_or("table_id", synth_id("tables", f.line()));
    t.page_title = f.str("page_title");
    t.section_title = f.str_or("section_title", "");
    t.headers = f.strings("headers");
    const auto& rows = f.get("rows");
    if (!rows.is_array()) f.fail("field rows must be an array of string arrays");
    for (const auto& r : rows) {
      if (!r.is_array()) f.fail("field rows must be an array of string arrays");
      TableRow row;
      for (const auto& c : r) {
        if (!c.is_string()) f.fail("field rows must be an array of string arrays");
        row.cells.push_back({c.get<std::string>()});
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  });
  check_unique(out, [](const Table& t) { return t.table_id; });
  return out;
}

std::vector<KBSubGraph> read_kb(std::istream& in) {
  auto out = read_lines(in, [](const Fields& f) {
    KBSubGraph g;
    g.graph_id = f.str_or("graph_id", synth_id("kb", f.line()));
    g.subject = f.str("subject");
    for (auto& [rel, obj] : f.string_pairs("edges")) g.edges.push_back({rel, obj});
    g.validate();
    return g;
  });
  check_unique(out, [](const KBSubGraph& g) { return g.graph_id; });
  return out;
}

std::vector<Passage> read_passages(std::istream& in) {
  auto out = read_lines(in, [](const Fields& f) {
    return Passage{f.str_or("doc_id", synth_id("passages", f.line())), f.str_or("title", ""),
                   f.str("text")};
  });
  check_unique(out, [](const Passage& p) { return p.doc_id; });
  return out;
}

std::vector<QAExample> read_qa(std::istream& in) {
  return read_lines(in, [](const Fields& f) {
    QAExample qa;
    qa.question = f.str("question");
    qa.answers = f.strings("answers");
    qa.question_entities = f.strings_or_empty("question_entities");
    qa.table_ids = f.strings_or_empty("table_ids");
    qa.validate();
    return qa;
  });
}

std::vector<TrainingExample> read_training(std::istream& in) {
  auto out = read_lines(in, [](const Fields& f) {
    TrainingExample ex;
    ex.source.record_id = f.str_or("record_id", synth_id("training", f.line()));
    ex.source.title = f.str("title");
    for (auto& [a, v] : f.string_pairs("pairs")) ex.source.pairs.push_back({a, v});
    ex.target = f.str("target");
    if (ex.target.empty()) f.fail("empty target");
    ex.source.validate();
    return ex;
  });
  check_unique(out, [](const TrainingExample& e) { return e.source.record_id; });
  return out;
}

std::vector<VerbalizedDoc> read_docs(std::istream& in) {
  auto out = read_lines(in, [](const Fields& f) {
    VerbalizedDoc d;
    d.doc_id = f.str("doc_id");
    d.title = f.str("title");
    d.text = f.str("text");
    d.provenance.kind = parse_source_kind(f, f.str("source_kind"));
    d.provenance.source_id = f.str("source_id");
    for (const auto& span : f.index_lists("unit_spans")) {
      if (span.size() != 2 || span[0] > span[1] || span[1] > d.text.size()) f.fail("bad unit span");
      if (!d.unit_spans.empty() && span[0] < d.unit_spans.back().end) f.fail("overlapping unit spans");
      d.unit_spans.push_back({span[0], span[1]});
    }
    const auto& rows = f.get("unit_rows");
    if (!rows.is_array() || rows.size() != d.unit_spans.size()) f.fail("unit_rows must match unit_spans");
    for (const auto& r : rows) {
      if (!r.is_number_unsigned()) f.fail("unit_rows must hold non-negative integers");
      d.unit_rows.push_back(r.get<std::size_t>());
    }
    return d;
  });
  check_unique(out, [](const VerbalizedDoc& d) { return d.doc_id; });
  return out;
}

std::vector<MinedTriple> read_mined(std::istream& in) {
  return read_lines(in, [](const Fields& f) {
    MinedTriple m;
    m.question = f.str("question");
    m.answers = f.strings("answers");
    m.source_kind = parse_source_kind(f, f.str_or("source_kind", "table"));
    m.source_id = f.str("source_id");
    for (const auto& h : f.index_lists("hits")) {
      if (h.empty() || h.size() > 2) f.fail("hits entries must be [row, column] or [edge]");
      m.hits.push_back({h[0], h.size() > 1 ? h[1] : 0});
    }
    if (m.hits.empty()) f.fail("mined triple without hits");
    return m;
  });
}

std::vector<Chunk> read_chunks(std::istream& in) {
  auto out = read_lines(in, [](const Fields& f) {
    Chunk c;
    c.chunk_id = f.str("chunk_id");
    c.parent_doc_id = f.str("parent_doc_id");
    c.title = f.str("title");
    c.text = f.str("text");
    c.word_count = count_words(c.text);
    c.source_kind = parse_chunk_kind(f.str("source_kind"));
    if (f.has("forced_split")) {
      const auto& v = f.get("forced_split");
      if (!v.is_boolean()) f.fail("field forced_split must be a boolean");
      c.forced_split = v.get<bool>();
    }
    return c;
  });
  check_unique(out, [](const Chunk& c) { return c.chunk_id; });
  return out;
}

std::vector<RetrieverTrainingInstance> read_instances(std::istream& in) {
  return read_lines(in, [](const Fields& f) {
    RetrieverTrainingInstance inst;
    inst.question = f.str("question");
    inst.answers = f.strings("answers");
    inst.positives = f.strings("positive_ctxs");
    inst.negatives = f.strings("negative_ctxs");
    inst.flags = f.strings_or_empty("flags");
    return inst;
  });
}

#define KNOWVERB_LOADER(name, type)                   \
  std::vector<type> load_##name(const std::string& path) { \
    auto in = open(path);                             \
    return read_##name(in);                           \
  }

KNOWVERB_LOADER(tables, Table)
KNOWVERB_LOADER(kb, KBSubGraph)
KNOWVERB_LOADER(passages, Passage)
KNOWVERB_LOADER(qa, QAExample)
KNOWVERB_LOADER(training, TrainingExample)
KNOWVERB_LOADER(docs, VerbalizedDoc)
KNOWVERB_LOADER(mined, MinedTriple)
KNOWVERB_LOADER(chunks, Chunk)
KNOWVERB_LOADER(instances, RetrieverTrainingInstance)

#undef KNOWVERB_LOADER

Corpus load_corpus(const std::string& path, CorpusKind kind) {
  switch (kind) {
    case CorpusKind::kTables:
      return load_tables(path);
    case CorpusKind::kKB:
      return load_kb(path);
    case CorpusKind::kPassages:
      return load_passages(path);
    case CorpusKind::kQA:
      return load_qa(path);
    case CorpusKind::kTraining:
      return load_training(path);
  }
  throw DataError("unknown corpus kind");
}

std::string to_jsonl(const Table& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : table.rows) {
    ordered_json cells = ordered_json::array();
    for (const auto& c : r.cells) cells.push_back(c.text);
    rows.push_back(std::move(cells));
  }
  ordered_json j;
  j["table_id"] = table.table_id;
  j["page_title"] = table.page_title;
  j["section_title"] = table.section_title;
  j["headers"] = table.headers;
  j["rows"] = std::move(rows);
  return dump(j);
}

std::string to_jsonl(const KBSubGraph& graph) {
  ordered_json edges = ordered_json::array();
  for (const auto& e : graph.edges) edges.push_back({e.relation, e.object});
  ordered_json j;
  j["graph_id"] = graph.graph_id;
  j["subject"] = graph.subject;
  j["edges"] = std::move(edges);
  return dump(j);
}

std::string to_jsonl(const Passage& passage) {
  ordered_json j;
  j["doc_id"] = passage.doc_id;
  j["title"] = passage.title;
  j["text"] = passage.text;
  return dump(j);
}

std::string to_jsonl(const QAExample& qa) {
  ordered_json j;
  j["question"] = qa.question;
  j["answers"] = qa.answers;
  j["question_entities"] = qa.question_entities;
  if (!qa.table_ids.empty()) j["table_ids"] = qa.table_ids;
  return dump(j);
}

std::string to_jsonl(const TrainingExample& example) {
  ordered_json j;
  j["record_id"] = example.source.record_id;
  j["title"] = example.source.title;
  j["pairs"] = pairs_json(example.source.pairs);
  j["target"] = example.target;
  return dump(j);
}

std::string to_jsonl(const StructuredRecord& record) {
  ordered_json j;
  j["record_id"] = record.record_id;
  j["title"] = record.title;
  j["pairs"] = pairs_json(record.pairs);
  return dump(j);
}

std::string to_jsonl(const VerbalizedDoc& doc) {
  ordered_json spans = ordered_json::array();
  for (const auto& s : doc.unit_spans) spans.push_back({s.start, s.end});
  ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["title"] = doc.title;
  j["text"] = doc.text;
  j["source_kind"] = to_string(doc.provenance.kind);
  j["source_id"] = doc.provenance.source_id;
  j["unit_spans"] = std::move(spans);
  j["unit_rows"] = doc.unit_rows;
  return dump(j);
}

std::string to_jsonl(const MinedTriple& triple) {
  ordered_json hits = ordered_json::array();
  for (const auto& h : triple.hits) {
    if (triple.source_kind == SourceKind::kKB) {
      hits.push_back(ordered_json::array({h.row}));
    } else {
      hits.push_back({h.row, h.column});
    }
  }
  ordered_json j;
  j["question"] = triple.question;
  j["answers"] = triple.answers;
  j["source_kind"] = to_string(triple.source_kind);
  j["source_id"] = triple.source_id;
  j["hits"] = std::move(hits);
  return dump(j);
}

std::string to_jsonl(const Chunk& chunk) {
  ordered_json j;
  j["chunk_id"] = chunk.chunk_id;
  j["parent_doc_id"] = chunk.parent_doc_id;
  j["title"] = chunk.title;
  j["text"] = chunk.text;
  j["source_kind"] = to_string(chunk.source_kind);
  if (chunk.forced_split) j["forced_split"] = true;
  return dump(j);
}

std::string to_jsonl(const RetrieverTrainingInstance& instance) {
  ordered_json j;
  j["question"] = instance.question;
  j["answers"] = instance.answers;
  j["positive_ctxs"] = instance.positives;
  j["negative_ctxs"] = instance.negatives;
  if (!instance.flags.empty()) j["flags"] = instance.flags;
  return dump(j);
}

std::string to_jsonl(const RecordScore& score) {
  ordered_json j;
  j["record_id"] = score.record_id;
  j["score"] = score.score;
  return dump(j);
}

}  // namespace knowverb
