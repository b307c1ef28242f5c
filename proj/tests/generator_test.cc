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

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "json.hpp"
#include "knowverb/convert.h"
#include "knowverb/parallel.h"
#include "knowverb/textnorm.h"
#include "support/fixtures.h"

namespace knowverb {
namespace {

GeneratorRequest request(const std::string& title, std::vector<Pair> values, int beams = kDefaultBeamSize) {
  return make_request(fixture::make_record("req-1", title, values), beams);
}

TEST(TemplateGenerator, Examples) {
  TemplateGenerator gen;
  auto beams = gen.generate(request("Mount Ruapehu", {{"last eruption", "25 september 2007"}}));
  ASSERT_EQ(beams.size(), 1u);
  EXPECT_EQ(beams[0], (Beam{0, "the last eruption of mount ruapehu is 25 september 2007."}));
  EXPECT_EQ(template_text(request("Mount Ruapehu", {})), "mount ruapehu.");
  EXPECT_EQ(template_text(request("T", {{"a", "1"}, {"b", "2"}})), "the a of t is 1. the b of t is 2.");
}

TEST(TemplateGenerator, KeepsEveryValueVerbatimAfterNormalization) {
  fixture::Words w(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Pair> values;
    for (std::size_t i = 0, n = w.uniform(0, 6); i < n; ++i) values.push_back({w.word(), w.sentence(w.vocab(4), w.uniform(1, 4))});
    auto text = template_text(request(w.word(), values));
    for (const auto& v : values) {
      std::vector<std::string> answer{v.value};
      ASSERT_TRUE(contains_answer(text, answer));
    }
  }
}

TEST(Protocol, EncodeRequest) {
  auto line = encode_request(request("T", {{"a", "b"}}, 4));
  auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["id"], "req-1");
  EXPECT_EQ(j["title"], "T");
  EXPECT_EQ(j["beam_size"], 4);
  EXPECT_EQ(j["pairs"], nlohmann::json::parse(R"([["[title]","T"],["a","b"]])"));
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_THROW(encode_request(request("bad \xfe", {})), DataError);
}

TEST(Protocol, DecodeResponse) {
  auto req = request("T", {}, 2);
  EXPECT_EQ(decode_response(req, R"({"id":"req-1","beams":["a","b"]})"),
            (std::vector<Beam>{{0, "a"}, {1, "b"}}));
  EXPECT_EQ(decode_response(req, R"({"id":"req-1","beams":["a","b","c"]})").size(), 2u);
  auto expect_error = [&](const std::string& line, const std::string& fragment) {
    try {
      decode_response(req, line);
      ADD_FAILURE() << line;
    } catch (const ProtocolError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  expect_error(R"({"id":"other","beams":["a"]})", "id mismatch");
  expect_error(R"({"beams":["a"]})", "without id");
  expect_error(R"({"id":"req-1","error":"oom"})", "oom");
  expect_error(R"({"id":"req-1","beams":[]})", "nonempty");
  expect_error(R"({"id":"req-1","beams":"a"})", "nonempty");
  expect_error(R"({"id":"req-1","beams":[3]})", "not a string");
  expect_error("nope", "malformed");
  expect_error("{\"id\":\"req-1\",\"beams\":[\"\xff\"]}", "malformed");
  expect_error("[1]", "not an object");
}

ExternalGenerator process_generator(std::vector<std::string> args,
                                    std::chrono::milliseconds timeout = std::chrono::seconds(10),
                                    std::size_t connections = 1) {
  args.insert(args.begin(), FAKE_GENERATOR_PATH);
  return ExternalGenerator([args] { return spawn_process_channel(args); }, {timeout, connections});
}

TEST(ProcessChannel, TwoBeamRoundTrip) {
  auto gen = process_generator({"list", "a", "b"});
  EXPECT_EQ(gen.generate(request("T", {}, 2)), (std::vector<Beam>{{0, "a"}, {1, "b"}}));
}

TEST(ProcessChannel, TenBeams) {
  auto gen = process_generator({"many"});
  auto beams = gen.generate(request("T", {}, 10));
  ASSERT_EQ(beams.size(), 10u);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(beams[i].rank, i);
}

TEST(ProcessChannel, TemplateModeMatchesInProcessGenerator) {
  auto gen = process_generator({"template"});
  TemplateGenerator local;
  fixture::Words w(32);
  for (int i = 0; i < 50; ++i) {
    auto req = request(w.word(), {{w.word(), w.sentence(w.vocab(3), 3)}});
    req.request_id = "r" + std::to_string(i);
    ASSERT_EQ(gen.generate(req), local.generate(req));
  }
}

TEST(ProcessChannel, EchoModeReturnsSerializedRecord) {
  auto gen = process_generator({"echo"});
  auto rec = fixture::make_record("req-1", "T", {{"a", "b"}});
  EXPECT_EQ(gen.generate(make_request(rec, 3)), (std::vector<Beam>{{0, serialize_record(rec)}}));
}

TEST(ProcessChannel, Faults) {
  auto expect_protocol_error = [](std::vector<std::string> args, const std::string& fragment,
                                  std::chrono::milliseconds timeout = std::chrono::seconds(10)) {
    auto gen = process_generator(std::move(args), timeout);
    try {
      gen.generate(request("T", {}));
      ADD_FAILURE() << fragment;
    } catch (const ProtocolError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  expect_protocol_error({"wrong-id"}, "id mismatch");
  expect_protocol_error({"error"}, "model exploded");
  expect_protocol_error({"garbage"}, "malformed");
  expect_protocol_error({"nonstring"}, "not a string");
  expect_protocol_error({"empty"}, "nonempty");
  expect_protocol_error({"sleep"}, "timed out", std::chrono::milliseconds(300));
  expect_protocol_error({"exit"}, "");
}

TEST(ProcessChannel, MissingExecutable) {
  ExternalGenerator gen([] { return spawn_process_channel({"/nonexistent/generator"}); });
  EXPECT_THROW(gen.generate(request("T", {})), ProtocolError);
}

TEST(ProcessChannel, ConcurrentCallersGetTheirOwnAnswers) {
  auto gen = process_generator({"template"}, std::chrono::seconds(10), 3);
  TemplateGenerator local;
  std::vector<GeneratorRequest> reqs;
  for (int i = 0; i < 40; ++i) {
    auto r = request("Title " + std::to_string(i), {{"n", std::to_string(i)}});
    r.request_id = "id" + std::to_string(i);
    reqs.push_back(r);
  }
  std::vector<std::vector<Beam>> got(reqs.size());
  parallel_for(reqs.size(), 3, [&](std::size_t i) { got[i] = gen.generate(reqs[i]); });
  for (std::size_t i = 0; i < reqs.size(); ++i) EXPECT_EQ(got[i], local.generate(reqs[i]));
}

// Minimal line server answering every request with the template text.
class TemplateServer {
 public:
  TemplateServer() {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    ::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
    ::listen(fd_, 4);
    socklen_t len = sizeof(addr);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    thread_ = std::thread([this] { serve(); });
  }
  ~TemplateServer() {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    thread_.join();
  }
  std::string address() const { return "127.0.0.1:" + std::to_string(port_); }

 private:
  void serve() {
    for (;;) {
      int client = ::accept(fd_, nullptr, nullptr);
      if (client < 0) return;
      std::string buf;
      char chunk[4096];
      for (;;) {
        ssize_t n = ::read(client, chunk, sizeof(chunk));
        if (n <= 0) break;
        buf.append(chunk, static_cast<std::size_t>(n));
        std::size_t nl;
        while ((nl = buf.find('\n')) != std::string::npos) {
          auto j = nlohmann::json::parse(buf.substr(0, nl));
          buf.erase(0, nl + 1);
          GeneratorRequest r;
          r.request_id = j["id"];
          r.title = j["title"];
          for (const auto& p : j["pairs"]) r.pairs.push_back({p[0], p[1]});
          nlohmann::json resp = {{"id", r.request_id}, {"beams", {template_text(r)}}};
          std::string out = resp.dump() + "\n";
          if (::write(client, out.data(), out.size()) < 0) break;
        }
      }
      ::close(client);
    }
  }

  int fd_ = -1;
  int port_ = 0;
  std::thread thread_;
};

TEST(TcpChannel, RoundTrip) {
  TemplateServer server;
  std::string addr = server.address();
  ExternalGenerator gen([addr] { return connect_tcp_channel(addr); });
  auto req = request("Mount Ruapehu", {{"last eruption", "25 september 2007"}});
  EXPECT_EQ(gen.generate(req), TemplateGenerator().generate(req));
  EXPECT_EQ(gen.generate(req), TemplateGenerator().generate(req));
}

TEST(TcpChannel, BadAddress) {
  EXPECT_THROW(connect_tcp_channel("no-port"), ProtocolError);
  EXPECT_THROW(connect_tcp_channel("127.0.0.1:1"), ProtocolError);
}

}  // namespace
}  // namespace knowverb
