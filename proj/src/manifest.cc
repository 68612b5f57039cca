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

#include "adrpipe/manifest.h"

#include <chrono>
#include <cstdlib>
#include <ctime>

#include "adrpipe/io.h"
#include "adrpipe/version.h"

namespace adrpipe {

nlohmann::json RunManifest::to_json() const {
  return nlohmann::json{{"tool", "adrpipe"},
                        {"tool_version", tool_version},
                        {"timestamp", timestamp},
                        {"command", command},
                        {"inputs", inputs},
                        {"outputs", outputs},
                        {"config", config},
                        {"seeds", seeds}};
}

RunManifest make_manifest(std::string command) {
  RunManifest m;
  m.tool_version = std::string(kVersion);
  m.timestamp = current_timestamp();
  m.command = std::move(command);
  return m;
}

std::string current_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    if (const auto v = io::parse_int(epoch)) t = static_cast<std::time_t>(*v);
  }
  std::tm utc{};
  gmtime_r(&t, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace adrpipe
