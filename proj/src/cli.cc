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

#include "knowverb/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "knowverb/bm25.h"
#include "knowverb/chunker.h"
#include "knowverb/convert.h"
#include "knowverb/curation.h"
#include "knowverb/evaluation.h"
#include "knowverb/generator.h"
#include "knowverb/io.h"
#include "knowverb/manifest.h"
#include "knowverb/training_data.h"
#include "knowverb/verbalizer.h"

namespace knowverb {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> in;
  std::vector<std::string> out;
  std::string generator = "template";
  std::string gen_cmd;
  std::string gen_addr;
  int beam_size = kDefaultBeamSize;
  std::optional<double> threshold;
  std::string variant = "recall";
  std::size_t budget = kDefaultChunkBudget;
  double k1 = 0.9;
  double b = 0.4;
  std::vector<std::size_t> k;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string format = "raw";
  std::optional<std::size_t> cap;
  std::size_t max_pairs = kDefaultMaxPairs;
  std::size_t max_cell_words = kDefaultMaxCellWords;
  std::size_t n_negatives = 1;
  std::size_t negative_pool = 100;
  std::size_t min_positive_words = 100;
  std::vector<std::string> query;
  double timeout = 60.0;
  bool dedup = false;
};

struct RoleInput {
  std::string role;
  std::string path;
};

const std::vector<std::string> kRoles = {"tables", "kb",     "passages", "qa",    "training",
                                         "docs",   "mined",  "chunks",   "index", "instances",
                                         "a",      "b",      "tf",       "candidates"};

class Run {
 public:
  Run(std::string subcommand, Options opts, std::ostream& out)
      : sub_(std::move(subcommand)), opts_(std::move(opts)), out_(out) {
    manifest_.subcommand = sub_;
    for (const auto& spec : opts_.in) {
      auto eq = spec.find('=');
      if (eq != std::string::npos &&
          std::find(kRoles.begin(), kRoles.end(), spec.substr(0, eq)) != kRoles.end()) {
        inputs_.push_back({spec.substr(0, eq), spec.substr(eq + 1)});
      } else {
        inputs_.push_back({"", spec});
      }
    }
    fill_config();
  }

  void execute();

 private:
  // Untagged inputs take the subcommand's default role.
  std::vector<std::string> paths(const std::string& role, bool is_default = false) {
    std::vector<std::string> out;
    for (auto& in : inputs_) {
      if (in.role == role || (is_default && in.role.empty())) {
        if (in.role.empty()) in.role = role;
        out.push_back(in.path);
        manifest_.inputs.push_back({role, in.path});
      }
    }
    return out;
  }

  std::string one_path(const std::string& role, bool is_default = false) {
    auto p = paths(role, is_default);
    if (p.size() != 1) throw UsageError(sub_ + ": expected exactly one --in " + role + "=<path>");
    return p.front();
  }

  const std::string& output() {
    if (opts_.out.size() != 1) throw UsageError(sub_ + ": expected exactly one --out <path>");
    return opts_.out.front();
  }

  void check_unused_inputs() {
    for (const auto& in : inputs_) {
      if (in.role.empty()) throw UsageError(sub_ + ": cannot tell what input " + in.path + " is; tag it as role=path");
    }
  }

  template <typename Load>
  auto load(const std::string& path, Load fn) {
    try {
      return fn(path);
    } catch (const DataError& e) {
      throw DataError(path + ": " + e.what(), e.line());
    }
  }

  template <typename T, typename Load>
  std::vector<T> load_all(const std::vector<std::string>& ps, Load fn) {
    std::vector<T> out;
    for (const auto& p : ps) {
      auto part = load(p, fn);
      std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
  }

  std::vector<Table> prepared_tables(const std::vector<std::string>& ps) {
    auto raw = load_all<Table>(ps, load_tables);
    if (opts_.dedup) raw = dedup_tables(raw);
    std::vector<Table> out;
    out.reserve(raw.size());
    for (const auto& t : raw) out.push_back(normalize_table(t, opts_.max_cell_words));
    manifest_.counts["tables"] = out.size();
    return out;
  }

  void write_output(const std::string& content) {
    const auto& path = output();
    write_file_atomic(path, content);
    manifest_.outputs.push_back(path);
  }

  void write_sidecar(const std::string& path, const std::string& content) {
    write_file_atomic(path, content);
    manifest_.outputs.push_back(path);
  }

  void finish() { manifest_.write_for(output()); }

  RougeVariant variant() const {
    try {
      return parse_variant(opts_.variant);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  double threshold(double fallback) const {
    double t = opts_.threshold.value_or(fallback);
    if (!(t >= 0.0 && t <= 1.0)) throw UsageError("--threshold must be in [0, 1]");
    return t;
  }

  std::unique_ptr<Generator> make_generator();
  VerbalizeOptions verbalize_options() {
    VerbalizeOptions v;
    v.beam_size = opts_.beam_size;
    v.max_pairs = opts_.max_pairs;
    v.variant = variant();
    v.jobs = opts_.jobs;
    return v;
  }

  void fill_config();

  void convert();
  void verbalize();
  void filter();
  void select();
  void mix_sets();
  void mine();
  void chunk();
  void index();
  void augment();
  void search_index();
  void eval_coverage();
  void eval_recall();
  void build_train_data();
  void mine_negatives();

  std::string sub_;
  Options opts_;
  std::ostream& out_;
  std::vector<RoleInput> inputs_;
  Manifest manifest_;
};

void Run::fill_config() {
  auto& c = manifest_.config;
  auto num = [](auto v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  c["generator"] = opts_.generator;
  c["gen_cmd"] = opts_.gen_cmd;
  c["gen_addr"] = opts_.gen_addr;
  c["beam_size"] = num(opts_.beam_size);
  c["threshold"] = opts_.threshold ? num(*opts_.threshold) : "default";
  c["variant"] = opts_.variant;
  c["budget"] = num(opts_.budget);
  c["k1"] = num(opts_.k1);
  c["b"] = num(opts_.b);
  std::string ks;
  for (auto k : opts_.k) ks += (ks.empty() ? "" : ",") + num(k);
  c["k"] = ks;
  c["seed"] = num(opts_.seed);
  c["format"] = opts_.format;
  c["cap"] = opts_.cap ? num(*opts_.cap) : "default";
  c["max_pairs"] = num(opts_.max_pairs);
  c["max_cell_words"] = num(opts_.max_cell_words);
  c["n_negatives"] = num(opts_.n_negatives);
  c["negative_pool"] = num(opts_.negative_pool);
  c["min_positive_words"] = num(opts_.min_positive_words);
  c["dedup"] = opts_.dedup ? "true" : "false";
  c["timeout"] = num(opts_.timeout);
  // --jobs is deliberately absent: output never depends on it.
}

std::unique_ptr<Generator> Run::make_generator() {
  if (opts_.generator == "template") return std::make_unique<TemplateGenerator>();
  if (opts_.generator != "external") throw UsageError("--generator must be template or external");
  ExternalGeneratorOptions o;
  o.timeout = std::chrono::milliseconds(static_cast<long long>(opts_.timeout * 1000.0));
  o.max_connections = opts_.jobs;
  if (!opts_.gen_cmd.empty()) {
    std::istringstream s(opts_.gen_cmd);
    std::vector<std::string> argv;
    for (std::string w; s >> w;) argv.push_back(w);
    return std::make_unique<ExternalGenerator>([argv] { return spawn_process_channel(argv); }, o);
  }
  if (!opts_.gen_addr.empty()) {
    std::string addr = opts_.gen_addr;
    return std::make_unique<ExternalGenerator>([addr] { return connect_tcp_channel(addr); }, o);
  }
  throw UsageError("--generator external needs --gen-cmd or --gen-addr");
}

void Run::convert() {
  auto tables = prepared_tables(paths("tables", true));
  auto graphs = load_all<KBSubGraph>(paths("kb"), load_kb);
  check_unused_inputs();
  std::string content;
  std::uint64_t n = 0;
  for (const auto& t : tables) {
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (const auto& g : split_record(row_to_record(t, r), opts_.max_pairs)) {
        content += to_jsonl(g) + "\n";
        ++n;
      }
    }
  }
  for (const auto& g : graphs) {
    for (const auto& rec : split_record(subgraph_to_record(g), opts_.max_pairs)) {
      content += to_jsonl(rec) + "\n";
      ++n;
    }
  }
  manifest_.counts["records"] = n;
  write_output(content);
  finish();
}

void Run::verbalize() {
  auto tables = prepared_tables(paths("tables", true));
  auto graphs = load_all<KBSubGraph>(paths("kb"), load_kb);
  check_unused_inputs();
  auto gen = make_generator();
  auto vo = verbalize_options();
  auto docs = verbalize_tables(tables, *gen, vo);
  auto kb_docs = verbalize_subgraphs(graphs, *gen, vo);
  docs.insert(docs.end(), kb_docs.begin(), kb_docs.end());
  manifest_.counts["docs"] = docs.size();
  write_output(to_jsonl_lines(docs));
  finish();
}

void Run::filter() {
  auto examples = load_all<TrainingExample>(paths("training", true), load_training);
  check_unused_inputs();
  auto result = filter_training_set({"T", std::move(examples)}, threshold(0.5), variant(), opts_.jobs);
  manifest_.counts["input"] = result.scores.size();
  manifest_.counts["kept"] = result.kept.examples.size();
  write_output(to_jsonl_lines(result.kept.examples));
  write_sidecar(output() + ".scores.jsonl", to_jsonl_lines(result.scores));
  finish();
}

void Run::select() {
  auto examples = load_all<TrainingExample>(paths("candidates", true), load_training);
  auto tf = paths("tf");
  check_unused_inputs();
  std::size_t cap = std::numeric_limits<std::size_t>::max();
  if (opts_.cap) {
    cap = *opts_.cap;
  } else if (!tf.empty()) {
    cap = load_all<TrainingExample>(tf, load_training).size();
  }
  std::vector<Candidate> candidates;
  candidates.reserve(examples.size());
  for (auto& e : examples) candidates.push_back({std::move(e.source), std::move(e.target)});
  auto result = select_in_domain(candidates, threshold(0.9), cap, opts_.seed, variant(), opts_.jobs);
  manifest_.counts["candidates"] = candidates.size();
  manifest_.counts["selected"] = result.selected.examples.size();
  write_output(to_jsonl_lines(result.selected.examples));
  write_sidecar(output() + ".scores.jsonl", to_jsonl_lines(result.scores));
  finish();
}

void Run::mix_sets() {
  auto a = load_all<TrainingExample>(paths("a"), load_training);
  auto b = load_all<TrainingExample>(paths("b"), load_training);
  check_unused_inputs();
  auto mixed = mix({"a", std::move(a)}, {"b", std::move(b)}, opts_.seed);
  manifest_.counts["mixed"] = mixed.examples.size();
  write_output(to_jsonl_lines(mixed.examples));
  finish();
}

void Run::mine() {
  auto qas = load_all<QAExample>(paths("qa"), load_qa);
  auto tables = prepared_tables(paths("tables"));
  auto graphs = load_all<KBSubGraph>(paths("kb"), load_kb);
  check_unused_inputs();
  auto mined = mine_table_questions(qas, tables, opts_.jobs);
  auto kb = mine_kb_questions(qas, graphs, opts_.jobs);
  mined.insert(mined.end(), kb.begin(), kb.end());
  manifest_.counts["questions"] = qas.size();
  manifest_.counts["mined"] = mined.size();
  write_output(to_jsonl_lines(mined));
  finish();
}

void Run::chunk() {
  std::vector<Chunk> chunks;
  auto add = [&](std::vector<Chunk> more) { std::move(more.begin(), more.end(), std::back_inserter(chunks)); };
  for (const auto& p : load_all<Passage>(paths("passages", true), load_passages)) add(chunk_passage(p, opts_.budget));
  for (const auto& t : prepared_tables(paths("tables"))) add(chunk_table_raw(t, opts_.budget));
  for (const auto& g : load_all<KBSubGraph>(paths("kb"), load_kb)) add(chunk_subgraph_raw(g, opts_.budget));
  for (const auto& d : load_all<VerbalizedDoc>(paths("docs"), load_docs)) add(chunk_verbalized(d, opts_.budget));
  check_unused_inputs();
  manifest_.counts["chunks"] = chunks.size();
  manifest_.counts["forced_splits"] =
      std::count_if(chunks.begin(), chunks.end(), [](const Chunk& c) { return c.forced_split; });
  write_output(to_jsonl_lines(chunks));
  finish();
}

void Run::index() {
  auto chunks = load_all<Chunk>(paths("chunks", true), load_chunks);
  check_unused_inputs();
  auto idx = DocIndex::build(chunks, {opts_.k1, opts_.b}, opts_.jobs);
  manifest_.counts["chunks"] = idx.size();
  manifest_.counts["terms"] = idx.postings().size();
  write_output(encode_index(idx));
  finish();
}

void Run::augment() {
  auto base = load(one_path("index"), load_index);
  auto chunks = load_all<Chunk>(paths("chunks", true), load_chunks);
  check_unused_inputs();
  auto idx = base.augment(chunks, opts_.jobs);
  manifest_.counts["chunks_before"] = base.size();
  manifest_.counts["chunks"] = idx.size();
  write_output(encode_index(idx));
  finish();
}

void Run::search_index() {
  auto idx = load(one_path("index", true), load_index);
  std::vector<std::string> queries = opts_.query;
  for (const auto& qa : load_all<QAExample>(paths("qa"), load_qa)) queries.push_back(qa.question);
  check_unused_inputs();
  if (queries.empty()) throw UsageError("search: give --query or --in qa=<path>");
  std::size_t k = opts_.k.empty() ? 10 : opts_.k.front();
  std::string content;
  for (const auto& q : queries) {
    for (const auto& hit : idx.search(q, k)) {
      nlohmann::ordered_json j;
      j["query"] = q;
      j["rank"] = hit.rank;
      j["chunk_id"] = hit.chunk_id;
      j["score"] = hit.score;
      content += j.dump() + "\n";
    }
  }
  if (opts_.out.empty()) {
    out_ << content;
    return;
  }
  write_output(content);
  finish();
}

void Run::eval_coverage() {
  auto mined = load_all<MinedTriple>(paths("mined"), load_mined);
  auto tables = prepared_tables(paths("tables"));
  auto graphs = load_all<KBSubGraph>(paths("kb"), load_kb);
  check_unused_inputs();
  std::map<std::string, const Table*> table_by_id;
  for (const auto& t : tables) table_by_id.emplace(t.table_id, &t);
  std::map<std::string, const KBSubGraph*> graph_by_id;
  for (const auto& g : graphs) graph_by_id.emplace(g.graph_id, &g);

  std::vector<GoldRecord> gold;
  for (std::size_t i = 0; i < mined.size(); ++i) {
    const auto& m = mined[i];
    if (m.source_kind == SourceKind::kKB) {
      auto it = graph_by_id.find(m.source_id);
      if (it == graph_by_id.end()) throw DataError("mined triple references unknown sub-graph " + m.source_id);
      auto rec = subgraph_to_record(*it->second);
      rec.record_id = "q" + std::to_string(i) + ":" + rec.record_id;
      gold.push_back({std::move(rec), m.answers});
      continue;
    }
    auto it = table_by_id.find(m.source_id);
    if (it == table_by_id.end()) throw DataError("mined triple references unknown table " + m.source_id);
    std::vector<std::size_t> rows;
    for (const auto& h : m.hits) {
      if (std::find(rows.begin(), rows.end(), h.row) == rows.end()) rows.push_back(h.row);
    }
    for (auto r : rows) {
      auto rec = row_to_record(*it->second, r);
      rec.record_id = "q" + std::to_string(i) + ":" + rec.record_id;
      gold.push_back({std::move(rec), m.answers});
    }
  }
  auto gen = make_generator();
  auto report = answer_coverage(gold, *gen, verbalize_options());
  nlohmann::ordered_json j;
  j["total"] = report.total;
  j["covered"] = report.covered;
  j["coverage_pct"] = report.coverage_pct;
  j["misses"] = report.misses;
  j["precondition_failures"] = report.precondition_failures;
  manifest_.counts["total"] = report.total;
  manifest_.counts["covered"] = report.covered;
  write_output(j.dump(2) + "\n");
  finish();
}

void Run::eval_recall() {
  auto idx = load(one_path("index"), load_index);
  auto qas = load_all<QAExample>(paths("qa", true), load_qa);
  check_unused_inputs();
  std::vector<std::size_t> ks = opts_.k.empty() ? std::vector<std::size_t>{20, 100} : opts_.k;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() == 0) throw UsageError("--k must be positive");
  auto report = recall_at_k(idx, qas, ks, opts_.jobs);
  nlohmann::ordered_json per_k;
  for (const auto& [k, v] : report.per_k) per_k["R" + std::to_string(k)] = v;
  nlohmann::ordered_json j;
  j["n_questions"] = report.n_questions;
  j["recall"] = std::move(per_k);
  manifest_.counts["questions"] = report.n_questions;
  if (opts_.out.empty()) {
    out_ << j.dump(2) << "\n";
    return;
  }
  write_output(j.dump(2) + "\n");
  finish();
}

void Run::build_train_data() {
  auto mined = load_all<MinedTriple>(paths("mined"), load_mined);
  auto tables = prepared_tables(paths("tables"));
  auto graphs = load_all<KBSubGraph>(paths("kb"), load_kb);
  auto idx = load(one_path("index"), load_index);
  auto docs = load_all<VerbalizedDoc>(paths("docs"), load_docs);
  check_unused_inputs();
  TrainingDataOptions o;
  try {
    o.format = parse_format(opts_.format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.format == PassageFormat::kVerbalized && docs.empty()) {
    throw UsageError("build-train-data: --format verbalized needs --in docs=<path>");
  }
  o.n_negatives = opts_.n_negatives;
  o.seed = opts_.seed;
  o.min_positive_words = opts_.min_positive_words;
  o.negative_pool = opts_.negative_pool;

  std::vector<MinedTriple> table_mined, kb_mined;
  for (auto& m : mined) (m.source_kind == SourceKind::kKB ? kb_mined : table_mined).push_back(std::move(m));
  auto t = build_table_training_data(table_mined, tables, idx, docs, o);
  auto k = build_kb_training_data(kb_mined, graphs, idx, docs, o);
  auto instances = std::move(t.instances);
  std::move(k.instances.begin(), k.instances.end(), std::back_inserter(instances));
  manifest_.counts["instances"] = instances.size();
  manifest_.counts["dropped"] = t.dropped.size() + k.dropped.size();
  manifest_.counts["without_negatives"] = std::count_if(
      instances.begin(), instances.end(), [](const RetrieverTrainingInstance& i) {
        return std::find(i.flags.begin(), i.flags.end(), kFlagNoNegatives) != i.flags.end();
      });
  write_output(to_jsonl_lines(instances));
  finish();
}

void Run::mine_negatives() {
  auto idx = load(one_path("index"), load_index);
  auto instances = load_all<RetrieverTrainingInstance>(paths("instances", true), load_instances);
  check_unused_inputs();
  std::size_t k = opts_.k.empty() ? 100 : opts_.k.front();
  auto mined = mine_hard_negatives(idx, instances, k, opts_.jobs);
  manifest_.counts["instances"] = mined.size();
  manifest_.counts["without_hard_negatives"] = std::count_if(
      mined.begin(), mined.end(), [](const RetrieverTrainingInstance& i) {
        return std::find(i.flags.begin(), i.flags.end(), kFlagNoHardNegatives) != i.flags.end();
      });
  write_output(to_jsonl_lines(mined));
  finish();
}

void Run::execute() {
  static const std::map<std::string, void (Run::*)()> kDispatch = {
      {"convert", &Run::convert},
      {"verbalize", &Run::verbalize},
      {"filter", &Run::filter},
      {"select", &Run::select},
      {"mix", &Run::mix_sets},
      {"mine", &Run::mine},
      {"chunk", &Run::chunk},
      {"index", &Run::index},
      {"augment", &Run::augment},
      {"search", &Run::search_index},
      {"eval-coverage", &Run::eval_coverage},
      {"eval-recall", &Run::eval_recall},
      {"build-train-data", &Run::build_train_data},
      {"mine-negatives", &Run::mine_negatives},
  };
  (this->*kDispatch.at(sub_))();
}

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"convert", "Normalize tables / KB sub-graphs and write pair-format records"},
    {"verbalize", "Generate text for every table row and sub-graph"},
    {"filter", "Drop training examples whose ROUGE-1 score is below --threshold"},
    {"select", "Pick generated examples scoring above --threshold, capped and seeded"},
    {"mix", "Concatenate and shuffle two training sets"},
    {"mine", "Find questions answerable from tables or KB sub-graphs"},
    {"chunk", "Cut passages, raw tables/sub-graphs or verbalized docs into chunks"},
    {"index", "Build a BM25 index over chunks"},
    {"augment", "Add chunks to an existing index"},
    {"search", "Query an index"},
    {"eval-coverage", "Answer coverage of a generator on mined records"},
    {"eval-recall", "Retrieval recall at k"},
    {"build-train-data", "Retriever training instances from mined questions"},
    {"mine-negatives", "Add hard negatives from an index to training instances"},
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured-knowledge verbalization and retrieval toolkit", "knowverb"};
  Options o;
  app.set_config("--config", "", "key=value file with option defaults; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--in", o.in, "Input file, optionally role-tagged as role=path")->take_all();
  app.add_option("--out", o.out, "Output file");
  app.add_option("--generator", o.generator, "template | external");
  app.add_option("--gen-cmd", o.gen_cmd, "Command line of the external generator process");
  app.add_option("--gen-addr", o.gen_addr, "host:port of an external generator");
  app.add_option("--beam-size", o.beam_size, "Beams requested per record")->check(CLI::PositiveNumber);
  app.add_option("--threshold", o.threshold, "ROUGE-1 threshold in [0,1]");
  app.add_option("--variant", o.variant, "recall | f1");
  app.add_option("--budget", o.budget, "Words per chunk")->check(CLI::PositiveNumber);
  app.add_option("--k1", o.k1, "BM25 k1");
  app.add_option("--b", o.b, "BM25 b");
  app.add_option("--k", o.k, "Cutoff(s); repeatable");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "raw | verbalized");
  app.add_option("--cap", o.cap, "Maximum ID-T size (default: size of --in tf=...)");
  app.add_option("--max-pairs", o.max_pairs, "Value pairs per generator request")->check(CLI::PositiveNumber);
  app.add_option("--max-cell-words", o.max_cell_words, "Cells are cut to this many words");
  app.add_option("--n-negatives", o.n_negatives, "Negatives per training instance");
  app.add_option("--negative-pool", o.negative_pool, "BM25 results examined for negatives");
  app.add_option("--min-positive-words", o.min_positive_words, "Pad table positives to this length");
  app.add_option("--query", o.query, "Search query; repeatable");
  app.add_option("--timeout", o.timeout, "Seconds per external generator request");
  app.add_flag("--dedup", o.dedup, "De-duplicate tables before use");
  for (const auto& [name, help] : kSubcommands) app.add_subcommand(name, help)->fallthrough();
  app.require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  std::string sub = app.get_subcommands().front()->get_name();
  try {
    Run(sub, o, out).execute();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const ProtocolError& e) {
    err << "generator error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace knowverb
