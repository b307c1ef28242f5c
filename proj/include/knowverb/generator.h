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

#pragma once

// Generator abstraction. A generator turns one StructuredRecord into a list
// of candidate texts (beams). The built-in TemplateGenerator is a
// deterministic stand-in; ExternalGenerator talks to a separate process over
// the JSONL wire protocol:
//
//   request:  {"id": str, "title": str, "pairs": [[str, str], ...], "beam_size": int}
//   response: {"id": str, "beams": [str, ...]}      (or {"id": str, "error": str})
//
// One response line per request line, ids echoed, 1 <= |beams| <= beam_size.

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "knowverb/types.h"

namespace knowverb {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultBeamSize = 10;

struct GeneratorRequest {
  std::string request_id;
  std::string title;
  std::vector<Pair> pairs;
  int beam_size = kDefaultBeamSize;
};

GeneratorRequest make_request(const StructuredRecord& record, int beam_size);

struct Beam {
  int rank = 0;
  std::string text;
  bool operator==(const Beam&) const = default;
};

// Implementations must be safe to call from several threads at once.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::vector<Beam> generate(const GeneratorRequest& request) = 0;
};

// "the {attribute} of {title} is {value}." per value pair, lowercased;
// "{title}." when the record has no value pairs. Always one beam.
class TemplateGenerator : public Generator {
 public:
  std::vector<Beam> generate(const GeneratorRequest& request) override;
};

std::string template_text(const GeneratorRequest& request);

// Encodes a request as one protocol line (no trailing newline).
std::string encode_request(const GeneratorRequest& request);

// Validates a response line against its request and returns the beams,
// truncated to beam_size. Throws ProtocolError.
std::vector<Beam> decode_response(const GeneratorRequest& request, const std::string& line);

// A single request/response connection. Not thread-safe; callers hold it
// exclusively while a request is in flight.
class GeneratorChannel {
 public:
  virtual ~GeneratorChannel() = default;
  virtual void write_line(const std::string& line) = 0;
  // Throws ProtocolError on timeout or end of stream.
  virtual std::string read_line(std::chrono::milliseconds timeout) = 0;
};

// Spawns `argv` with its stdin/stdout connected to pipes.
std::unique_ptr<GeneratorChannel> spawn_process_channel(const std::vector<std::string>& argv);

// Connects to "host:port".
std::unique_ptr<GeneratorChannel> connect_tcp_channel(const std::string& address);

struct ExternalGeneratorOptions {
  std::chrono::milliseconds timeout{60'000};
  // Independent connections opened lazily, one per concurrent caller.
  std::size_t max_connections = 1;
};

class ExternalGenerator : public Generator {
 public:
  using ChannelFactory = std::function<std::unique_ptr<GeneratorChannel>()>;

  ExternalGenerator(ChannelFactory factory, ExternalGeneratorOptions options = {});
  ~ExternalGenerator() override;

  std::vector<Beam> generate(const GeneratorRequest& request) override;

 private:
  std::unique_ptr<GeneratorChannel> acquire();
  void release(std::unique_ptr<GeneratorChannel> channel);

  ChannelFactory factory_;
  ExternalGeneratorOptions options_;
  std::mutex mu_;
  std::condition_variable available_;
  std::vector<std::unique_ptr<GeneratorChannel>> idle_;
  std::size_t opened_ = 0;
};

}  // namespace knowverb
