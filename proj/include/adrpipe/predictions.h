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

#ifndef ADRPIPE_PREDICTIONS_H_
#define ADRPIPE_PREDICTIONS_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adrpipe::predictions {

struct PredictionRecord {
  std::string model_id;
  std::string run_id;
  std::string tweet_id;
  double prob = 0.0;  // positive-class probability in [0, 1]
};

inline constexpr std::string_view kPredictionHeader = "model_id\trun_id\ttweet_id\tprob";

// Positive-class probabilities indexed by (model, run, tweet). Every
// (model, run) pair covers the same tweet set; tweets, models and runs are
// kept in lexicographic order so that loading order never matters.
class RunMatrix {
 public:
  RunMatrix() = default;

  // Throws ValidationError on duplicate triples, out-of-range probabilities,
  // invalid ids or ragged tweet coverage.
  static RunMatrix from_records(std::vector<PredictionRecord> records);

  const std::vector<std::string>& tweet_ids() const { return tweet_ids_; }
  std::vector<std::string> models() const;
  std::vector<std::string> runs(const std::string& model) const;
  std::size_t run_count(const std::string& model) const;

  // Probabilities of one run, aligned with tweet_ids().
  std::span<const double> probs(const std::string& model, const std::string& run) const;

  // Copy keeping only the runs for which keep(model, run) is true. Models
  // left without runs are dropped.
  RunMatrix filter_runs(
      const std::function<bool(const std::string&, const std::string&)>& keep) const;

  std::vector<PredictionRecord> records() const;

  friend bool operator==(const RunMatrix&, const RunMatrix&) = default;

 private:
  std::vector<std::string> tweet_ids_;
  std::map<std::string, std::map<std::string, std::vector<double>>> probs_;
};

// Parses one prediction file (mandatory header). `source` names it in errors.
std::vector<PredictionRecord> parse_prediction_records(std::string_view content,
                                                       std::string_view source = "<input>");

RunMatrix load_predictions(std::span<const std::filesystem::path> paths);

std::string format_predictions(std::span<const PredictionRecord> records);

// Per-model run-averaged probabilities aligned with a shared, sorted tweet
// list.
class AveragedPredictions {
 public:
  AveragedPredictions() = default;
  AveragedPredictions(std::vector<std::string> tweet_ids,
                      std::map<std::string, std::vector<double>> by_model);

  // Builds from model -> (tweet -> prob); all models must cover the same
  // tweets.
  static AveragedPredictions from_map(
      const std::map<std::string, std::map<std::string, double>>& by_model);

  const std::vector<std::string>& tweet_ids() const { return tweet_ids_; }
  std::vector<std::string> models() const;
  const std::vector<double>& probs(const std::string& model) const;
  const std::map<std::string, std::vector<double>>& by_model() const { return by_model_; }

  // tweet -> prob for one model.
  std::map<std::string, double> as_map(const std::string& model) const;

 private:
  std::vector<std::string> tweet_ids_;
  std::map<std::string, std::vector<double>> by_model_;
};

// Arithmetic mean over each model's runs. Values are summed in sorted order,
// so the result does not depend on how runs are labeled.
AveragedPredictions average_runs(const RunMatrix& m);

// One message per model whose run count differs from `expected`.
std::vector<std::string> run_count_warnings(const RunMatrix& m, std::size_t expected = 5);

}  // namespace adrpipe::predictions

#endif  // ADRPIPE_PREDICTIONS_H_
