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

#include "adrpipe/predictions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "adrpipe/error.h"
#include "adrpipe/io.h"

namespace adrpipe::predictions {

namespace {

void check_id(std::string_view kind, std::string_view id, bool forbid_list_chars) {
  if (id.empty()) throw ValidationError("empty " + std::string(kind));
  if (id.find_first_of("\t\n\r") != std::string_view::npos) {
    throw ValidationError(std::string(kind) + " contains tab or newline");
  }
  // ':' and ',' separate fields inside the decisions file.
  if (forbid_list_chars && id.find_first_of(":,") != std::string_view::npos) {
    throw ValidationError(std::string(kind) + " '" + std::string(id) +
                          "' must not contain ':' or ','");
  }
}

bool prob_in_range(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

RunMatrix RunMatrix::from_records(std::vector<PredictionRecord> records) {
  if (records.empty()) throw ValidationError("no prediction records");
  RunMatrix m;
  std::set<std::string> tweets;
  for (const auto& r : records) {
    check_id("model_id", r.model_id, true);
    check_id("run_id", r.run_id, true);
    check_id("tweet_id", r.tweet_id, false);
    if (!prob_in_range(r.prob)) {
      throw ValidationError("probability out of range for " + r.model_id + "/" + r.run_id +
                            "/" + r.tweet_id + ": " + io::format_double(r.prob));
    }
    tweets.insert(r.tweet_id);
  }
  m.tweet_ids_.assign(tweets.begin(), tweets.end());
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < m.tweet_ids_.size(); ++i) index.emplace(m.tweet_ids_[i], i);

  // Unset slots are NaN until filled.
  std::map<std::string, std::map<std::string, std::vector<double>>> probs;
  for (const auto& r : records) {
    auto& row = probs[r.model_id][r.run_id];
    if (row.empty()) row.assign(m.tweet_ids_.size(), std::numeric_limits<double>::quiet_NaN());
    double& slot = row[index.at(r.tweet_id)];
    if (!std::isnan(slot)) {
      throw ValidationError("duplicate prediction for model " + r.model_id + ", run " +
                            r.run_id + ", tweet " + r.tweet_id);
    }
    slot = r.prob;
  }

  for (const auto& [model, runs] : probs) {
    for (const auto& [run, row] : runs) {
      std::vector<std::string_view> missing;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (std::isnan(row[i])) missing.push_back(m.tweet_ids_[i]);
      }
      if (missing.empty()) continue;
      std::string msg = "run " + run + " of " + model + " missing tweet";
      if (missing.size() > 1) msg += "s";
      const std::size_t shown = std::min<std::size_t>(missing.size(), 10);
      for (std::size_t i = 0; i < shown; ++i) {
        msg += (i == 0 ? " " : ", ");
        msg += missing[i];
      }
      if (missing.size() > shown) {
        msg += " (and " + std::to_string(missing.size() - shown) + " more)";
      }
      throw ValidationError(msg);
    }
  }
  m.probs_ = std::move(probs);
  return m;
}

std::vector<std::string> RunMatrix::models() const {
  std::vector<std::string> out;
  for (const auto& [model, runs] : probs_) out.push_back(model);
  return out;
}

std::vector<std::string> RunMatrix::runs(const std::string& model) const {
  std::vector<std::string> out;
  const auto it = probs_.find(model);
  if (it == probs_.end()) throw ValidationError("unknown model " + model);
  for (const auto& [run, row] : it->second) out.push_back(run);
  return out;
}

std::size_t RunMatrix::run_count(const std::string& model) const {
  const auto it = probs_.find(model);
  return it == probs_.end() ? 0 : it->second.size();
}

std::span<const double> RunMatrix::probs(const std::string& model,
                                         const std::string& run) const {
  const auto it = probs_.find(model);
  if (it == probs_.end()) throw ValidationError("unknown model " + model);
  const auto jt = it->second.find(run);
  if (jt == it->second.end()) throw ValidationError("unknown run " + run + " of " + model);
  return jt->second;
}

RunMatrix RunMatrix::filter_runs(
    const std::function<bool(const std::string&, const std::string&)>& keep) const {
  RunMatrix out;
  out.tweet_ids_ = tweet_ids_;
  for (const auto& [model, runs] : probs_) {
    for (const auto& [run, row] : runs) {
      if (keep(model, run)) out.probs_[model][run] = row;
    }
  }
  if (out.probs_.empty()) throw ValidationError("every run was filtered out");
  return out;
}

std::vector<PredictionRecord> RunMatrix::records() const {
  std::vector<PredictionRecord> out;
  for (const auto& [model, runs] : probs_) {
    for (const auto& [run, row] : runs) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out.push_back({model, run, tweet_ids_[i], row[i]});
      }
    }
  }
  return out;
}

std::vector<PredictionRecord> parse_prediction_records(std::string_view content,
                                                       std::string_view source) {
  const auto lines = io::split_lines(content);
  if (lines.empty() || lines.front() != kPredictionHeader) {
    throw ValidationError(std::string(source) + ": missing header '" +
                          std::string(kPredictionHeader) + "'");
  }
  std::vector<PredictionRecord> out;
  out.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = std::string(source) + " line " + std::to_string(i + 1);
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 4) {
      throw ValidationError("expected 4 tab-separated fields at " + where);
    }
    const auto prob = io::parse_double(fields[3]);
    if (!prob) {
      throw ValidationError("malformed probability '" + std::string(fields[3]) + "' at " +
                            where);
    }
    if (!prob_in_range(*prob)) {
      throw ValidationError("probability out of range at " + where + ": " +
                            std::string(fields[3]));
    }
    out.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
                   *prob});
  }
  return out;
}

RunMatrix load_predictions(std::span<const std::filesystem::path> paths) {
  std::vector<PredictionRecord> all;
  for (const auto& path : paths) {
    auto records = parse_prediction_records(io::read_file(path), path.string());
    all.insert(all.end(), std::make_move_iterator(records.begin()),
               std::make_move_iterator(records.end()));
  }
  return RunMatrix::from_records(std::move(all));
}

std::string format_predictions(std::span<const PredictionRecord> records) {
  std::string out(kPredictionHeader);
  out.push_back('\n');
  for (const auto& r : records) {
    out += r.model_id;
    out.push_back('\t');
    out += r.run_id;
    out.push_back('\t');
    out += r.tweet_id;
    out.push_back('\t');
    out += io::format_double(r.prob);
    out.push_back('\n');
  }
  return out;
}

AveragedPredictions::AveragedPredictions(std::vector<std::string> tweet_ids,
                                         std::map<std::string, std::vector<double>> by_model)
    : tweet_ids_(std::move(tweet_ids)), by_model_(std::move(by_model)) {
  for (const auto& [model, probs] : by_model_) {
    if (probs.size() != tweet_ids_.size()) {
      throw ValidationError("model " + model + " does not cover the shared tweet set");
    }
  }
}

AveragedPredictions AveragedPredictions::from_map(
    const std::map<std::string, std::map<std::string, double>>& by_model) {
  std::vector<std::string> tweets;
  std::map<std::string, std::vector<double>> aligned;
  bool first = true;
  for (const auto& [model, probs] : by_model) {
    std::vector<std::string> ids;
    std::vector<double> values;
    for (const auto& [tweet, p] : probs) {
      ids.push_back(tweet);
      values.push_back(p);
    }
    if (first) {
      tweets = ids;
      first = false;
    } else if (ids != tweets) {
      throw ValidationError("model " + model + " covers a different tweet set");
    }
    aligned.emplace(model, std::move(values));
  }
  return AveragedPredictions(std::move(tweets), std::move(aligned));
}

std::vector<std::string> AveragedPredictions::models() const {
  std::vector<std::string> out;
  for (const auto& [model, probs] : by_model_) out.push_back(model);
  return out;
}

const std::vector<double>& AveragedPredictions::probs(const std::string& model) const {
  const auto it = by_model_.find(model);
  if (it == by_model_.end()) throw ValidationError("unknown model " + model);
  return it->second;
}

std::map<std::string, double> AveragedPredictions::as_map(const std::string& model) const {
  const auto& p = probs(model);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < tweet_ids_.size(); ++i) out.emplace(tweet_ids_[i], p[i]);
  return out;
}

AveragedPredictions average_runs(const RunMatrix& m) {
  std::map<std::string, std::vector<double>> by_model;
  const std::size_t n = m.tweet_ids().size();
  std::vector<double> column;
  for (const std::string& model : m.models()) {
    const auto runs = m.runs(model);
    std::vector<std::span<const double>> rows;
    for (const auto& run : runs) rows.push_back(m.probs(model, run));
    std::vector<double> means(n);
    for (std::size_t i = 0; i < n; ++i) {
      column.clear();
      for (const auto& row : rows) column.push_back(row[i]);
      std::sort(column.begin(), column.end());
      const double sum = std::accumulate(column.begin(), column.end(), 0.0);
      const double mean = sum / static_cast<double>(column.size());
      // Rounding can push the quotient one ulp outside the sample range.
      means[i] = std::clamp(mean, column.front(), column.back());
    }
    by_model.emplace(model, std::move(means));
  }
  return AveragedPredictions(m.tweet_ids(), std::move(by_model));
}

std::vector<std::string> run_count_warnings(const RunMatrix& m, std::size_t expected) {
  std::vector<std::string> out;
  for (const std::string& model : m.models()) {
    const std::size_t n = m.run_count(model);
    if (n != expected) {
      out.push_back("model " + model + " has " + std::to_string(n) + " run" +
                    (n == 1 ? "" : "s") + " (expected " + std::to_string(expected) + ")");
    }
  }
  return out;
}

}  // namespace adrpipe::predictions
