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

#include "adrpipe/ensemble.h"

#include <algorithm>

#include "adrpipe/error.h"
#include "adrpipe/io.h"

namespace adrpipe::ensemble {

namespace {

void check_threshold(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw ValidationError("threshold must lie in (0, 1), got " + io::format_double(t));
  }
}

}  // namespace

void EnsembleConfig::set_threshold(const std::string& model, double threshold) {
  check_threshold(threshold);
  thresholds_[model] = threshold;
}

void EnsembleConfig::set_default_threshold(std::optional<double> threshold) {
  if (threshold) check_threshold(*threshold);
  default_ = threshold;
}

double EnsembleConfig::threshold_for(const std::string& model) const {
  const auto it = thresholds_.find(model);
  if (it != thresholds_.end()) return it->second;
  if (!default_) throw ValidationError("no threshold configured for model " + model);
  return *default_;
}

std::pair<std::string, double> parse_threshold_assignment(std::string_view arg) {
  const std::size_t eq = arg.rfind('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ValidationError("expected model=threshold, got '" + std::string(arg) + "'");
  }
  const auto value = io::parse_double(arg.substr(eq + 1));
  if (!value) {
    throw ValidationError("malformed threshold in '" + std::string(arg) + "'");
  }
  check_threshold(*value);
  return {std::string(arg.substr(0, eq)), *value};
}

std::vector<EnsembleDecision> decide(const predictions::AveragedPredictions& avg,
                                     const EnsembleConfig& cfg) {
  const auto models = avg.models();
  std::vector<double> thresholds;
  for (const auto& m : models) thresholds.push_back(cfg.threshold_for(m));

  const auto& tweets = avg.tweet_ids();
  std::vector<EnsembleDecision> out(tweets.size());
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    EnsembleDecision& d = out[i];
    d.tweet_id = tweets[i];
    for (std::size_t k = 0; k < models.size(); ++k) {
      const double p = avg.probs(models[k])[i];
      const bool v = verdict(p, thresholds[k]);
      d.per_model_prob.emplace(models[k], p);
      d.per_model_verdict.emplace(models[k], v);
      d.ensemble_verdict = d.ensemble_verdict || v;
    }
  }
  std::sort(out.begin(), out.end(), [](const EnsembleDecision& a, const EnsembleDecision& b) {
    return a.tweet_id < b.tweet_id;
  });
  return out;
}

std::map<std::string, bool> single_model_decide(const std::map<std::string, double>& probs,
                                                double threshold) {
  std::map<std::string, bool> out;
  for (const auto& [tweet, p] : probs) out.emplace(tweet, verdict(p, threshold));
  return out;
}

std::string format_decisions(std::span<const EnsembleDecision> decisions) {
  std::string out;
  for (const auto& d : decisions) {
    out += d.tweet_id;
    out.push_back('\t');
    bool first = true;
    for (const auto& [model, p] : d.per_model_prob) {
      if (!first) out.push_back(',');
      first = false;
      out += model + ":" + io::format_double(p);
    }
    out.push_back('\t');
    first = true;
    for (const auto& [model, v] : d.per_model_verdict) {
      if (!first) out.push_back(',');
      first = false;
      out += model + (v ? ":1" : ":0");
    }
    out += d.ensemble_verdict ? "\t1\n" : "\t0\n";
  }
  return out;
}

std::vector<EnsembleDecision> parse_decisions(std::string_view content,
                                              std::string_view source) {
  std::vector<EnsembleDecision> out;
  std::vector<std::string> first_models;
  const auto lines = io::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = std::string(source) + " line " + std::to_string(i + 1);
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 4) throw ValidationError("expected 4 fields at " + where);
    EnsembleDecision d;
    d.tweet_id = fields[0];
    if (d.tweet_id.empty()) throw ValidationError("empty tweet_id at " + where);
    for (std::string_view item : io::split(fields[1], ',')) {
      const std::size_t colon = item.find(':');
      const auto p = colon == std::string_view::npos ? std::nullopt
                                                     : io::parse_double(item.substr(colon + 1));
      if (!p || *p < 0.0 || *p > 1.0) {
        throw ValidationError("malformed model:prob '" + std::string(item) + "' at " + where);
      }
      d.per_model_prob.emplace(std::string(item.substr(0, colon)), *p);
    }
    bool any = false;
    for (std::string_view item : io::split(fields[2], ',')) {
      const std::size_t colon = item.find(':');
      const std::string_view v =
          colon == std::string_view::npos ? std::string_view() : item.substr(colon + 1);
      if (v != "0" && v != "1") {
        throw ValidationError("malformed model:verdict '" + std::string(item) + "' at " +
                              where);
      }
      d.per_model_verdict.emplace(std::string(item.substr(0, colon)), v == "1");
      any = any || v == "1";
    }
    if (fields[3] != "0" && fields[3] != "1") {
      throw ValidationError("malformed ensemble verdict at " + where);
    }
    d.ensemble_verdict = fields[3] == "1";
    std::vector<std::string> prob_models;
    std::vector<std::string> verdict_models;
    for (const auto& [m, p] : d.per_model_prob) prob_models.push_back(m);
    for (const auto& [m, v] : d.per_model_verdict) verdict_models.push_back(m);
    if (prob_models != verdict_models) {
      throw ValidationError("probability and verdict model lists differ at " + where);
    }
    if (any != d.ensemble_verdict) {
      throw ValidationError("ensemble verdict is not the OR of member verdicts at " + where);
    }
    if (out.empty()) {
      first_models = prob_models;
    } else if (prob_models != first_models) {
      throw ValidationError("model set changes at " + where);
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace adrpipe::ensemble
