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

#ifndef ADRPIPE_BASELINE_H_
#define ADRPIPE_BASELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adrpipe/corpus.h"
#include "adrpipe/predictions.h"
#include "json.hpp"

namespace adrpipe::baseline {

enum class FeatureMode { kChar, kWord };

std::string_view feature_mode_name(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view name);

struct BaselineConfig {
  int ngram_lo = 3;
  int ngram_hi = 5;
  std::size_t feature_buckets = std::size_t{1} << 18;
  int epochs = 8;
  double learning_rate = 0.1;
  double l2 = 1e-5;
  // Loss weight of label-1 examples; label-0 examples weigh 1.
  double positive_weight = 1.0;
  std::uint64_t seed = 0;
  FeatureMode feature_mode = FeatureMode::kChar;

  // Throws ValidationError when a field is out of range.
  void validate() const;

  friend bool operator==(const BaselineConfig&, const BaselineConfig&) = default;
};

// Unknown keys are rejected; missing keys keep their defaults.
BaselineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const BaselineConfig& cfg);

// Sorted, de-duplicated bucket indices with L2-normalized n-gram counts.
struct SparseFeatures {
  std::vector<std::uint32_t> index;
  std::vector<double> value;
};

// Char mode: code-point n-grams of each space-padded word. Word mode: word
// n-grams. Both hash with 64-bit FNV-1a into feature_buckets slots.
SparseFeatures extract_features(std::string_view text, const BaselineConfig& cfg);

double sigmoid(double z);

class BaselineModel {
 public:
  BaselineModel(BaselineConfig cfg, std::vector<double> weights, double bias);

  const BaselineConfig& config() const { return config_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

  double score(const SparseFeatures& x) const;

  // Clamped to [1e-12, 1 - 1e-12] so the result is strictly inside (0, 1).
  double predict_prob(std::string_view text) const;

  // Text dump: magic line, config as JSON, bias, then non-zero weights.
  std::string serialize() const;
  static BaselineModel deserialize(std::string_view content,
                                   std::string_view source = "<model>");
  void save(const std::filesystem::path& path) const;
  static BaselineModel load(const std::filesystem::path& path);

  friend bool operator==(const BaselineModel&, const BaselineModel&) = default;

 private:
  BaselineConfig config_;
  std::vector<double> weights_;
  double bias_;
};

// Objective minimized by the trainer:
//   (1/N) * sum_i c_i * (softplus(z_i) - y_i * z_i) + (l2/2) * |w|^2
// with z_i = w.x_i + b and c_i = positive_weight when y_i = 1, else 1.
struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad_weights;
  double grad_bias = 0.0;
};

LossGradient loss_and_gradient(std::span<const SparseFeatures> xs, std::span<const int> ys,
                               std::span<const double> weights, double bias, double l2,
                               double positive_weight);

// Seeded SGD over per-example terms of the objective above. Deterministic
// given (d, cfg). Throws when d lacks either label.
BaselineModel train(const corpus::Dataset& d, const BaselineConfig& cfg);

struct ModelSpec {
  std::string model_id;
  BaselineConfig config;
};

// Trains `runs` models per spec with seeds seed+0 ... seed+runs-1 and scores
// every eval tweet. Run ids are "r1" ... "r<runs>".
std::vector<predictions::PredictionRecord> run_protocol(const corpus::Dataset& train_set,
                                                        const corpus::Dataset& eval_set,
                                                        std::span<const ModelSpec> specs,
                                                        int runs);

std::vector<ModelSpec> specs_from_json(const nlohmann::json& j);

}  // namespace adrpipe::baseline

#endif  // ADRPIPE_BASELINE_H_
