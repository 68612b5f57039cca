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

#ifndef ADRPIPE_REPORT_H_
#define ADRPIPE_REPORT_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "adrpipe/ensemble.h"
#include "adrpipe/evaluate.h"
#include "adrpipe/manifest.h"
#include "json.hpp"

namespace adrpipe::evaluate {

inline constexpr std::string_view kEnsembleColumn = "Max Ensemble";

// Per-member and ensemble scores plus the voter-subset attribution.
struct EvalReport {
  std::vector<std::string> models;
  std::map<std::string, ConfusionCounts> member_counts;
  std::map<std::string, Metrics> member_metrics;
  ConfusionCounts ensemble_counts;
  Metrics ensemble_metrics;
  AttributionBreakdown attribution;
};

EvalReport build_eval_report(std::span<const ensemble::EnsembleDecision> decisions,
                             const Gold& gold);

// Rounds to 4 decimals for report output.
double round4(double x);

nlohmann::json eval_report_json(const EvalReport& report, const RunManifest& manifest);

// Tab-separated sections, with the manifest on a leading comment line.
std::string eval_report_tsv(const EvalReport& report, const RunManifest& manifest);

// Aligned text: metric rows by model columns, then the attribution table.
std::string eval_report_table(const EvalReport& report);

}  // namespace adrpipe::evaluate

#endif  // ADRPIPE_REPORT_H_
