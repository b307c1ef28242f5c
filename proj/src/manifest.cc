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

#include "knowverb/manifest.h"

#include <openssl/evp.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "knowverb/types.h"

namespace knowverb {

using nlohmann::ordered_json;

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw DataError("write failed: " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw DataError("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

std::string manifest_path(const std::string& output_path) { return output_path + ".manifest.json"; }

std::string Manifest::config_hash() const {
  ordered_json j(config);
  return sha256_hex(j.dump());
}

std::string Manifest::render() const {
  ordered_json j;
  j["subcommand"] = subcommand;
  j["config"] = ordered_json(config);
  j["config_hash"] = config_hash();
  ordered_json ins = ordered_json::array();
  for (const auto& in : inputs) {
    ordered_json e;
    e["role"] = in.role;
    e["path"] = in.path;
    e["sha256"] = sha256_file(in.path);
    if (std::filesystem::exists(manifest_path(in.path))) {
      e["predecessor_manifest_sha256"] = sha256_file(manifest_path(in.path));
    }
    ins.push_back(std::move(e));
  }
  j["inputs"] = std::move(ins);
  ordered_json outs = ordered_json::array();
  for (const auto& out : outputs) {
    ordered_json e;
    e["path"] = out;
    e["sha256"] = sha256_file(out);
    outs.push_back(std::move(e));
  }
  j["outputs"] = std::move(outs);
  j["counts"] = ordered_json(counts);
  return j.dump(2) + "\n";
}

void Manifest::write_for(const std::string& output_path) const {
  write_file_atomic(manifest_path(output_path), render());
}

}  // namespace knowverb
