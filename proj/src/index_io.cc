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

// Binary index layout, all integers and reals little-endian:
//
//   "VFIDX1"  k1:f64  b:f64  N:u64  avg_doc_len:f64
//   terms:u64  { len:u32 utf8[len] }*                      sorted
//   per term, in dictionary order:
//     count:u64  { delta_ordinal:varint  tf:u32 }*
//   per chunk, in ordinal order:
//     chunk_id:str  length:u64  source_kind:u8  parent_doc_id:str  title:str
//     text:str  forced_split:u8
//
// str is len:u32 followed by the bytes.

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "knowverb/bm25.h"

namespace knowverb {

namespace {

constexpr std::string_view kMagic = "VFIDX1";

class Writer {
 public:
  void raw(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  template <typename T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    le(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  void varint(std::uint64_t v) {
    while (v >= 0x80) {
      out_.push_back(static_cast<char>((v & 0x7f) | 0x80));
      v >>= 7;
    }
    out_.push_back(static_cast<char>(v));
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw DataError("index file truncated");
  }
  template <typename T>
  T le() {
    need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return v;
  }
  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }
  std::string str() {
    auto n = le<std::uint32_t>();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      auto byte = le<std::uint8_t>();
      v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
      if (!(byte & 0x80)) return v;
    }
    throw DataError("index file: bad varint");
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_index(const DocIndex& index) {
  Writer w;
  w.raw(kMagic.data(), kMagic.size());
  w.f64(index.params().k1);
  w.f64(index.params().b);
  w.le(static_cast<std::uint64_t>(index.size()));
  w.f64(index.avg_doc_len());

  std::vector<const std::string*> terms;
  terms.reserve(index.postings().size());
  for (const auto& [term, list] : index.postings()) terms.push_back(&term);
  std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) { return *a < *b; });

  w.le(static_cast<std::uint64_t>(terms.size()));
  for (const auto* t : terms) w.str(*t);
  for (const auto* t : terms) {
    const auto& list = index.postings().at(*t);
    w.le(static_cast<std::uint64_t>(list.size()));
    std::uint32_t prev = 0;
    for (const auto& p : list) {
      w.varint(p.ordinal - prev);
      w.le(p.tf);
      prev = p.ordinal;
    }
  }
  for (const auto& d : index.docs()) {
    w.str(d.chunk.chunk_id);
    w.le(d.length);
    w.le(static_cast<std::uint8_t>(d.chunk.source_kind));
    w.str(d.chunk.parent_doc_id);
    w.str(d.chunk.title);
    w.str(d.chunk.text);
    w.le(static_cast<std::uint8_t>(d.chunk.forced_split ? 1 : 0));
  }
  return w.take();
}

DocIndex decode_index(std::string_view bytes) {
  Reader r(bytes);
  if (r.bytes(kMagic.size()) != kMagic) throw DataError("not an index file (bad magic)");
  Bm25Params params;
  params.k1 = r.f64();
  params.b = r.f64();
  auto n = r.le<std::uint64_t>();
  r.f64();  // avg_doc_len is recomputed from the doc table

  auto term_count = r.le<std::uint64_t>();
  std::vector<std::string> terms;
  for (std::uint64_t i = 0; i < term_count; ++i) terms.push_back(r.str());
  std::unordered_map<std::string, std::vector<Posting>> postings;
  for (const auto& t : terms) {
    auto count = r.le<std::uint64_t>();
    std::vector<Posting> list;
    std::uint64_t ordinal = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      ordinal += r.varint();
      if (ordinal >= n) throw DataError("index file: posting ordinal out of range");
      list.push_back({static_cast<std::uint32_t>(ordinal), r.le<std::uint32_t>()});
    }
    postings.emplace(t, std::move(list));
  }
  std::vector<IndexedChunk> docs;
  for (std::uint64_t i = 0; i < n; ++i) {
    IndexedChunk d;
    d.chunk.chunk_id = r.str();
    d.length = r.le<std::uint64_t>();
    auto kind = r.le<std::uint8_t>();
    if (kind > static_cast<std::uint8_t>(ChunkKind::kKBVerbalized)) {
      throw DataError("index file: bad source kind");
    }
    d.chunk.source_kind = static_cast<ChunkKind>(kind);
    d.chunk.parent_doc_id = r.str();
    d.chunk.title = r.str();
    d.chunk.text = r.str();
    d.chunk.word_count = count_words(d.chunk.text);
    d.chunk.forced_split = r.le<std::uint8_t>() != 0;
    docs.push_back(std::move(d));
  }
  if (!r.done()) throw DataError("index file: trailing bytes");
  return DocIndex::from_parts(params, std::move(docs), std::move(postings));
}

void save_index(const DocIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  auto bytes = encode_index(index);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path);
}

DocIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_index(bytes);
}

}  // namespace knowverb
