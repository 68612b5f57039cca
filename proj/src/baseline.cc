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

#include "adrpipe/baseline.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "adrpipe/error.h"
#include "adrpipe/io.h"
#include "adrpipe/rng.h"
#include "adrpipe/text.h"

namespace adrpipe::baseline {

namespace {

constexpr std::string_view kModelMagic = "adrpipe-baseline 1";
constexpr double kProbFloor = 1e-12;
constexpr std::size_t kMaxBuckets = std::size_t{1} << 26;

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t fnv1a_byte(std::uint64_t h, unsigned char c) {
  h ^= c;
  return h * kFnvPrime;
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

const std::set<std::string> kConfigKeys = {"ngram_range", "feature_buckets", "epochs",
                                           "learning_rate", "l2", "positive_weight",
                                           "seed", "feature_mode"};

}  // namespace

std::string_view feature_mode_name(FeatureMode mode) {
  return mode == FeatureMode::kChar ? "char" : "word";
}

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "char") return FeatureMode::kChar;
  if (name == "word") return FeatureMode::kWord;
  throw ValidationError("feature_mode must be 'char' or 'word', got '" + std::string(name) + "'");
}

void BaselineConfig::validate() const {
  if (ngram_lo < 1 || ngram_hi < ngram_lo) {
    throw ValidationError("ngram_range must satisfy 1 <= lo <= hi");
  }
  if (feature_buckets == 0 || (feature_buckets & (feature_buckets - 1)) != 0 ||
      feature_buckets > kMaxBuckets) {
    throw ValidationError("feature_buckets must be a power of two no larger than 2^26");
  }
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ValidationError("learning_rate must be positive");
  if (!(l2 >= 0.0) || !(learning_rate * l2 < 1.0)) {
    throw ValidationError("l2 must be >= 0 with learning_rate * l2 < 1");
  }
  if (!(positive_weight >= 1.0)) throw ValidationError("positive_weight must be >= 1");
}

BaselineConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("baseline config must be a JSON object");
  BaselineConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "model_id") continue;
      if (kConfigKeys.count(key) == 0) {
        throw ValidationError("unknown baseline config key '" + key + "'");
      }
    }
    if (j.contains("ngram_range")) {
      const auto& r = j.at("ngram_range");
      if (!r.is_array() || r.size() != 2) {
        throw ValidationError("ngram_range must be a [lo, hi] array");
      }
      cfg.ngram_lo = r[0].get<int>();
      cfg.ngram_hi = r[1].get<int>();
    }
    if (j.contains("feature_buckets")) cfg.feature_buckets = j.at("feature_buckets").get<std::size_t>();
    if (j.contains("epochs")) cfg.epochs = j.at("epochs").get<int>();
    if (j.contains("learning_rate")) cfg.learning_rate = j.at("learning_rate").get<double>();
    if (j.contains("l2")) cfg.l2 = j.at("l2").get<double>();
    if (j.contains("positive_weight")) cfg.positive_weight = j.at("positive_weight").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("feature_mode")) {
      cfg.feature_mode = parse_feature_mode(j.at("feature_mode").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("baseline config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json config_to_json(const BaselineConfig& cfg) {
  return nlohmann::json{{"ngram_range", {cfg.ngram_lo, cfg.ngram_hi}},
                        {"feature_buckets", cfg.feature_buckets},
                        {"epochs", cfg.epochs},
                        {"learning_rate", cfg.learning_rate},
                        {"l2", cfg.l2},
                        {"positive_weight", cfg.positive_weight},
                        {"seed", cfg.seed},
                        {"feature_mode", std::string(feature_mode_name(cfg.feature_mode))}};
}

SparseFeatures extract_features(std::string_view input, const BaselineConfig& cfg) {
  const std::uint64_t mask = cfg.feature_buckets - 1;
  std::vector<std::uint32_t> hits;
  const auto words = text::split_whitespace(input);
  if (cfg.feature_mode == FeatureMode::kChar) {
    std::string padded;
    for (std::string_view w : words) {
      padded.assign(" ");
      padded.append(w);
      padded.push_back(' ');
      const auto bounds = text::code_point_boundaries(padded);
      const std::size_t chars = bounds.size() - 1;
      for (int n = cfg.ngram_lo; n <= cfg.ngram_hi; ++n) {
        const auto len = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i + len <= chars; ++i) {
          std::uint64_t h = fnv1a_byte(fnv1a_byte(kFnvOffset, 'c'), static_cast<unsigned char>(n));
          h = fnv1a(h, std::string_view(padded).substr(bounds[i], bounds[i + len] - bounds[i]));
          hits.push_back(static_cast<std::uint32_t>(h & mask));
        }
      }
    }
  } else {
    for (int n = cfg.ngram_lo; n <= cfg.ngram_hi; ++n) {
      const auto len = static_cast<std::size_t>(n);
      for (std::size_t i = 0; i + len <= words.size(); ++i) {
        std::uint64_t h = fnv1a_byte(fnv1a_byte(kFnvOffset, 'w'), static_cast<unsigned char>(n));
        for (std::size_t k = 0; k < len; ++k) {
          if (k) h = fnv1a_byte(h, 0x1f);
          h = fnv1a(h, words[i + k]);
        }
        hits.push_back(static_cast<std::uint32_t>(h & mask));
      }
    }
  }

  std::sort(hits.begin(), hits.end());
  SparseFeatures x;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    x.index.push_back(hits[i]);
    x.value.push_back(static_cast<double>(j - i));
    i = j;
  }
  double norm = 0.0;
  for (double v : x.value) norm += v * v;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& v : x.value) v /= norm;
  }
  return x;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

BaselineModel::BaselineModel(BaselineConfig cfg, std::vector<double> weights, double bias)
    : config_(cfg), weights_(std::move(weights)), bias_(bias) {
  config_.validate();
  if (weights_.size() != config_.feature_buckets) {
    throw ValidationError("weight vector length " + std::to_string(weights_.size()) +
                          " does not match feature_buckets " +
                          std::to_string(config_.feature_buckets));
  }
}

double BaselineModel::score(const SparseFeatures& x) const {
  double z = bias_;
  for (std::size_t k = 0; k < x.index.size(); ++k) z += weights_[x.index[k]] * x.value[k];
  return z;
}

double BaselineModel::predict_prob(std::string_view input) const {
  const double p = sigmoid(score(extract_features(input, config_)));
  return std::clamp(p, kProbFloor, 1.0 - kProbFloor);
}

std::string BaselineModel::serialize() const {
  std::string out(kModelMagic);
  out += "\nconfig " + config_to_json(config_).dump() + "\n";
  out += "bias " + io::format_double(bias_) + "\n";
  std::size_t nonzero = 0;
  for (double w : weights_) nonzero += (w != 0.0);
  out += "nonzero " + std::to_string(nonzero) + "\n";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    out += std::to_string(i) + "\t" + io::format_double(weights_[i]) + "\n";
  }
  return out;
}

BaselineModel BaselineModel::deserialize(std::string_view content, std::string_view source) {
  const auto lines = io::split_lines(content);
  const std::string src(source);
  if (lines.size() < 4 || lines[0] != kModelMagic) {
    throw ValidationError(src + ": not an adrpipe baseline model (version 1)");
  }
  auto strip = [&](std::string_view line, std::string_view key) {
    if (line.substr(0, key.size()) != key) {
      throw ValidationError(src + ": expected '" + std::string(key) + "' line");
    }
    return line.substr(key.size());
  };
  BaselineConfig cfg;
  try {
    cfg = config_from_json(nlohmann::json::parse(strip(lines[1], "config ")));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(src + ": bad config line: " + e.what());
  }
  const auto bias = io::parse_double(strip(lines[2], "bias "));
  const auto nonzero = io::parse_int(strip(lines[3], "nonzero "));
  if (!bias || !nonzero || *nonzero < 0 ||
      lines.size() != 4 + static_cast<std::size_t>(*nonzero)) {
    throw ValidationError(src + ": malformed header or weight count");
  }
  std::vector<double> weights(cfg.feature_buckets, 0.0);
  for (std::size_t i = 4; i < lines.size(); ++i) {
    const auto fields = io::split(lines[i], '\t');
    const auto idx = fields.size() == 2 ? io::parse_int(fields[0]) : std::nullopt;
    const auto w = fields.size() == 2 ? io::parse_double(fields[1]) : std::nullopt;
    if (!idx || !w || *idx < 0 || static_cast<std::size_t>(*idx) >= weights.size()) {
      throw ValidationError(src + ": malformed weight at line " + std::to_string(i + 1));
    }
    weights[static_cast<std::size_t>(*idx)] = *w;
  }
  return BaselineModel(cfg, std::move(weights), *bias);
}

void BaselineModel::save(const std::filesystem::path& path) const {
  io::write_file_atomic(path, serialize());
}

BaselineModel BaselineModel::load(const std::filesystem::path& path) {
  return deserialize(io::read_file(path), path.string());
}

LossGradient loss_and_gradient(std::span<const SparseFeatures> xs, std::span<const int> ys,
                               std::span<const double> weights, double bias, double l2,
                               double positive_weight) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw ValidationError("loss_and_gradient needs matching, non-empty inputs");
  }
  LossGradient out;
  out.grad_weights.assign(weights.size(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const SparseFeatures& x = xs[i];
    double z = bias;
    for (std::size_t k = 0; k < x.index.size(); ++k) z += weights[x.index[k]] * x.value[k];
    const double c = ys[i] == 1 ? positive_weight : 1.0;
    out.loss += inv_n * c * (softplus(z) - ys[i] * z);
    const double g = inv_n * c * (sigmoid(z) - ys[i]);
    for (std::size_t k = 0; k < x.index.size(); ++k) out.grad_weights[x.index[k]] += g * x.value[k];
    out.grad_bias += g;
  }
  double sq = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    sq += weights[j] * weights[j];
    out.grad_weights[j] += l2 * weights[j];
  }
  out.loss += 0.5 * l2 * sq;
  return out;
}

BaselineModel train(const corpus::Dataset& d, const BaselineConfig& cfg) {
  cfg.validate();
  if (d.positive_count() == 0 || d.negative_count() == 0) {
    throw ValidationError("training data must contain both labels (positives: " +
                          std::to_string(d.positive_count()) + ", negatives: " +
                          std::to_string(d.negative_count()) + ")");
  }
  std::vector<SparseFeatures> xs;
  std::vector<int> ys;
  xs.reserve(d.size());
  for (const auto& r : d.records()) {
    xs.push_back(extract_features(r.text, cfg));
    ys.push_back(corpus::to_int(r.label));
  }

  // Weights are kept as scale * v so the L2 shrink of every step is O(1).
  std::vector<double> v(cfg.feature_buckets, 0.0);
  double scale = 1.0;
  double bias = 0.0;
  const double shrink = 1.0 - cfg.learning_rate * cfg.l2;

  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(cfg.seed);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    for (std::size_t i : order) {
      const SparseFeatures& x = xs[i];
      double dot = 0.0;
      for (std::size_t k = 0; k < x.index.size(); ++k) dot += v[x.index[k]] * x.value[k];
      const double z = scale * dot + bias;
      const double c = ys[i] == 1 ? cfg.positive_weight : 1.0;
      const double g = c * (sigmoid(z) - ys[i]);

      scale *= shrink;
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
      const double step = cfg.learning_rate * g / scale;
      for (std::size_t k = 0; k < x.index.size(); ++k) v[x.index[k]] -= step * x.value[k];
      bias -= cfg.learning_rate * g;
    }
  }
  for (double& w : v) w *= scale;
  return BaselineModel(cfg, std::move(v), bias);
}

std::vector<predictions::PredictionRecord> run_protocol(const corpus::Dataset& train_set,
                                                        const corpus::Dataset& eval_set,
                                                        std::span<const ModelSpec> specs,
                                                        int runs) {
  if (runs < 1) throw ValidationError("runs must be >= 1");
  if (specs.empty()) throw ValidationError("at least one model spec is required");
  std::set<std::string> ids;
  for (const auto& spec : specs) {
    if (!ids.insert(spec.model_id).second) {
      throw ValidationError("duplicate model_id " + spec.model_id);
    }
    spec.config.validate();
  }
  std::vector<predictions::PredictionRecord> out;
  out.reserve(specs.size() * static_cast<std::size_t>(runs) * eval_set.size());
  for (const auto& spec : specs) {
    for (int r = 0; r < runs; ++r) {
      BaselineConfig cfg = spec.config;
      cfg.seed = spec.config.seed + static_cast<std::uint64_t>(r);
      const BaselineModel model = train(train_set, cfg);
      const std::string run_id = "r" + std::to_string(r + 1);
      for (const auto& t : eval_set.records()) {
        out.push_back({spec.model_id, run_id, t.tweet_id, model.predict_prob(t.text)});
      }
    }
  }
  return out;
}

std::vector<ModelSpec> specs_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ValidationError("model specs must be a JSON array");
  std::vector<ModelSpec> out;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("model_id") || !item.at("model_id").is_string()) {
      throw ValidationError("each model spec needs a string model_id");
    }
    out.push_back({item.at("model_id").get<std::string>(), config_from_json(item)});
  }
  return out;
}

}  // namespace adrpipe::baseline
