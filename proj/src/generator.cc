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

#include "knowverb/generator.h"

#include "json.hpp"
#include "knowverb/textnorm.h"

namespace knowverb {

using nlohmann::json;

GeneratorRequest make_request(const StructuredRecord& record, int beam_size) {
  return {record.record_id, record.title, record.pairs, beam_size};
}

std::string template_text(const GeneratorRequest& request) {
  std::string out;
  for (const auto& p : request.pairs) {
    if (p.attribute == kTitleAttribute) continue;
    if (!out.empty()) out += ' ';
    out += "the " + p.attribute;
    if (!request.title.empty()) out += " of " + request.title;
    out += " is " + p.value + ".";
  }
  if (out.empty()) out = request.title + ".";
  return ascii_lower(out);
}

std::vector<Beam> TemplateGenerator::generate(const GeneratorRequest& request) {
  return {Beam{0, template_text(request)}};
}

std::string encode_request(const GeneratorRequest& request) {
  json pairs = json::array();
  for (const auto& p : request.pairs) pairs.push_back({p.attribute, p.value});
  json j = {{"id", request.request_id},
            {"title", request.title},
            {"pairs", std::move(pairs)},
            {"beam_size", request.beam_size}};
  try {
    return j.dump();
  } catch (const json::type_error& e) {
    throw DataError("request " + request.request_id + ": record is not valid UTF-8");
  }
}

std::vector<Beam> decode_response(const GeneratorRequest& request, const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ProtocolError("request " + request.request_id + ": malformed response: " + e.what());
  }
  if (!j.is_object()) throw ProtocolError("request " + request.request_id + ": response is not an object");
  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) {
    throw ProtocolError("request " + request.request_id + ": response without id");
  }
  if (id->get<std::string>() != request.request_id) {
    throw ProtocolError("request " + request.request_id + ": id mismatch (got \"" +
                        id->get<std::string>() + "\")");
  }
  if (auto err = j.find("error"); err != j.end()) {
    throw ProtocolError("request " + request.request_id + ": generator error: " +
                        (err->is_string() ? err->get<std::string>() : err->dump()));
  }
  auto beams = j.find("beams");
  if (beams == j.end() || !beams->is_array() || beams->empty()) {
    throw ProtocolError("request " + request.request_id + ": beams must be a nonempty array");
  }
  std::vector<Beam> out;
  for (const auto& b : *beams) {
    if (!b.is_string()) throw ProtocolError("request " + request.request_id + ": beam is not a string");
    if (static_cast<int>(out.size()) >= request.beam_size) break;
    out.push_back({static_cast<int>(out.size()), b.get<std::string>()});
  }
  return out;
}

ExternalGenerator::ExternalGenerator(ChannelFactory factory, ExternalGeneratorOptions options)
    : factory_(std::move(factory)), options_(options) {
  if (options_.max_connections == 0) options_.max_connections = 1;
}

ExternalGenerator::~ExternalGenerator() = default;

std::unique_ptr<GeneratorChannel> ExternalGenerator::acquire() {
  std::unique_lock lock(mu_);
  available_.wait(lock, [&] { return !idle_.empty() || opened_ < options_.max_connections; });
  if (!idle_.empty()) {
    auto ch = std::move(idle_.back());
    idle_.pop_back();
    return ch;
  }
  ++opened_;
  lock.unlock();
  try {
    return factory_();
  } catch (...) {
    std::lock_guard relock(mu_);
    --opened_;
    available_.notify_one();
    throw;
  }
}

void ExternalGenerator::release(std::unique_ptr<GeneratorChannel> channel) {
  std::lock_guard lock(mu_);
  if (channel) {
    idle_.push_back(std::move(channel));
  } else {
    --opened_;
  }
  available_.notify_one();
}

std::vector<Beam> ExternalGenerator::generate(const GeneratorRequest& request) {
  auto channel = acquire();
  try {
    channel->write_line(encode_request(request));
    std::string line = channel->read_line(options_.timeout);
    auto beams = decode_response(request, line);
    release(std::move(channel));
    return beams;
  } catch (...) {
    // The connection may be out of sync; drop it.
    channel.reset();
    release(nullptr);
    throw;
  }
}

}  // namespace knowverb
