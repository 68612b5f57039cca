// Copyright 2026 The adrpipe Authors.
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

#ifndef ADRPIPE_MANIFEST_H_
#define ADRPIPE_MANIFEST_H_

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace adrpipe {

// Everything needed to rerun a command: tool version, inputs, outputs,
// configuration echo and seeds. Embedded in every report.
struct RunManifest {
  std::string tool_version;
  std::string timestamp;
  std::string command;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, std::uint64_t> seeds;

  nlohmann::json to_json() const;
};

// A manifest stamped with the current tool version and time.
RunManifest make_manifest(std::string command);

// ISO-8601 UTC. Honors SOURCE_DATE_EPOCH when set, for reproducible builds.
std::string current_timestamp();

}  // namespace adrpipe

#endif  // ADRPIPE_MANIFEST_H_
