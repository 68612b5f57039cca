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

#ifndef ADRPIPE_EVALUATE_H_
#define ADRPIPE_EVALUATE_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adrpipe/corpus.h"
#include "adrpipe/ensemble.h"
#include "adrpipe/predictions.h"

namespace adrpipe::evaluate {

using Gold = std::map<std::string, corpus::Label>;
using Verdicts = std::map<std::string, bool>;

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Label 1 (ADR) is the positive class. Throws ValidationError listing the
// symmetric difference when the tweet sets differ.
ConfusionCounts confusion(const Verdicts& verdicts, const Gold& gold);

// Harmonic mean of precision and recall; 0 when both are 0.
double f1_score(double precision, double recall);

// Zero denominators yield 0, so a predictor that never says positive scores
// 0 on every metric.
Metrics metrics(const ConfusionCounts& c);

// Ensemble TPs and FPs keyed by the exact set of members that voted
// positive (sorted model ids). Every non-empty subset has an entry.
struct SubsetCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
};

struct AttributionBreakdown {
  std::vector<std::string> models;
  std::map<std::vector<std::string>, SubsetCounts> by_subset;
  std::size_t ensemble_tp = 0;
  std::size_t ensemble_fp = 0;
  // Share of ensemble TPs on which the model voted negative (0 without TPs).
  std::map<std::string, double> exclusive_fraction;

  // Subsets ordered by size, then lexicographically.
  std::vector<std::vector<std::string>> ordered_subsets() const;
};

AttributionBreakdown attribution(std::span<const ensemble::EnsembleDecision> decisions,
                                 const Gold& gold);

// Sample (n - 1) standard deviation. Throws with fewer than two values.
double sample_stddev(std::span<const double> values);

struct VariabilityReport {
  std::string scenario;
  std::size_t runs = 0;
  double f1_stddev = 0.0;
  double recall_stddev = 0.0;
};

VariabilityReport variability(std::span<const Metrics> per_run, std::string scenario);

// One row of a run-metrics file:
// `scenario<TAB>model_id<TAB>run_id<TAB>precision<TAB>recall<TAB>f1`.
struct RunMetricsRecord {
  std::string scenario;
  std::string model_id;
  std::string run_id;
  Metrics metrics;
};

inline constexpr std::string_view kRunMetricsHeader =
    "scenario\tmodel_id\trun_id\tprecision\trecall\tf1";

std::vector<RunMetricsRecord> parse_run_metrics(std::string_view content,
                                                std::string_view source = "<metrics>");
std::string format_run_metrics(std::span<const RunMetricsRecord> records);

// Standard deviations per (scenario, model); scenarios keep first-seen order.
struct VariabilityTable {
  std::vector<std::string> scenarios;
  std::vector<std::string> models;
  std::map<std::string, std::map<std::string, VariabilityReport>> cells;
};

VariabilityTable variability_table(std::span<const RunMetricsRecord> records);

// Aligned text: Index | Scenario | per model {F1 StDev, Recall StDev}.
std::string format_variability_table(const VariabilityTable& table);

// Metrics of every individual run, thresholded per model.
std::vector<RunMetricsRecord> per_run_metrics(const predictions::RunMatrix& m,
                                              const Gold& gold,
                                              const ensemble::EnsembleConfig& cfg,
                                              const std::string& scenario);

// Drops runs whose F1 against `gold` is below `min_f1` (non-converged runs
// predict all-negative and score 0).
predictions::RunMatrix filter_runs_by_f1(const predictions::RunMatrix& m, const Gold& gold,
                                         const ensemble::EnsembleConfig& cfg, double min_f1);

}  // namespace adrpipe::evaluate

#endif  // ADRPIPE_EVALUATE_H_
