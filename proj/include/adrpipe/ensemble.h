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

#ifndef ADRPIPE_ENSEMBLE_H_
#define ADRPIPE_ENSEMBLE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adrpipe/predictions.h"

namespace adrpipe::ensemble {

inline constexpr double kDefaultThreshold = 0.5;
inline constexpr std::string_view kMaxPositiveRule = "max-positive";

// Per-model probability cutoffs for the max-positive rule. Models without an
// explicit threshold use the default (0.5) unless defaults are disabled.
class EnsembleConfig {
 public:
  EnsembleConfig() = default;

  void set_threshold(const std::string& model, double threshold);
  // nullopt disables the fallback: every model then needs an explicit value.
  void set_default_threshold(std::optional<double> threshold);

  double threshold_for(const std::string& model) const;
  const std::map<std::string, double>& explicit_thresholds() const { return thresholds_; }
  std::optional<double> default_threshold() const { return default_; }

 private:
  std::map<std::string, double> thresholds_;
  std::optional<double> default_ = kDefaultThreshold;
};

// Parses "model=0.6".
std::pair<std::string, double> parse_threshold_assignment(std::string_view arg);

struct EnsembleDecision {
  std::string tweet_id;
  std::map<std::string, double> per_model_prob;
  std::map<std::string, bool> per_model_verdict;
  bool ensemble_verdict = false;

  friend bool operator==(const EnsembleDecision&, const EnsembleDecision&) = default;
};

// Positive iff prob >= threshold.
inline bool verdict(double prob, double threshold) { return prob >= threshold; }

// Thresholds each model's averaged probability, then ORs the member verdicts.
// One decision per tweet, ordered by tweet_id.
std::vector<EnsembleDecision> decide(const predictions::AveragedPredictions& avg,
                                     const EnsembleConfig& cfg);

std::map<std::string, bool> single_model_decide(const std::map<std::string, double>& probs,
                                                double threshold);

// `tweet_id<TAB>m:prob,...<TAB>m:verdict,...<TAB>ensemble`, one line per
// decision, no header.
std::string format_decisions(std::span<const EnsembleDecision> decisions);
std::vector<EnsembleDecision> parse_decisions(std::string_view content,
                                              std::string_view source = "<decisions>");

}  // namespace adrpipe::ensemble

#endif  // ADRPIPE_ENSEMBLE_H_
