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

// Run manifests: a JSON description of each CLI invocation (inputs with
// content hashes, resolved configuration, output hashes, counts) written
// next to every output as "<out>.manifest.json". Contains no timestamps, so
// identical runs produce identical manifests.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace knowverb {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::string& path);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view contents);

std::string manifest_path(const std::string& output_path);

struct ManifestInput {
  std::string role;
  std::string path;
};

struct Manifest {
  std::string subcommand;
  std::map<std::string, std::string> config;
  std::vector<ManifestInput> inputs;
  std::vector<std::string> outputs;
  std::map<std::string, std::uint64_t> counts;

  std::string config_hash() const;
  // Hashes inputs and outputs as they are on disk now; an input that has
  // its own manifest contributes that manifest's hash as its predecessor.
  std::string render() const;
  void write_for(const std::string& output_path) const;
};

}  // namespace knowverb
