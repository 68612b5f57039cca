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

#ifndef ADRPIPE_REPRODUCE_H_
#define ADRPIPE_REPRODUCE_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "adrpipe/evaluate.h"
#include "adrpipe/report.h"

namespace adrpipe::cli {

struct ReproduceResult {
  evaluate::EvalReport report;
  evaluate::VariabilityTable variability;
  std::vector<std::string> warnings;
  // Output name ("report.json", ...) -> written path.
  std::map<std::string, std::filesystem::path> outputs;
};

// Runs the whole chain described by a JSON config: dataset (file or
// synthetic) -> preprocess -> stratified split -> baseline protocol, or
// external prediction files -> ingest -> run averaging -> max-positive
// ensemble -> evaluation, attribution and variability reports. Nothing is
// written until every stage has succeeded. Errors are rethrown with the
// failing stage's name prepended.
ReproduceResult reproduce(const std::filesystem::path& config_path);

}  // namespace adrpipe::cli

#endif  // ADRPIPE_REPRODUCE_H_
