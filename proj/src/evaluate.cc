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

#include "adrpipe/evaluate.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "adrpipe/error.h"
#include "adrpipe/io.h"

namespace adrpipe::evaluate {

namespace {

constexpr std::size_t kMaxAttributionModels = 16;

template <typename A, typename B>
void require_same_keys(const std::map<std::string, A>& left, std::string_view left_name,
                       const std::map<std::string, B>& right, std::string_view right_name) {
  std::vector<std::string> only_left;
  std::vector<std::string> only_right;
  auto l = left.begin();
  auto r = right.begin();
  while (l != left.end() || r != right.end()) {
    if (r == right.end() || (l != left.end() && l->first < r->first)) {
      only_left.push_back((l++)->first);
    } else if (l == left.end() || r->first < l->first) {
      only_right.push_back((r++)->first);
    } else {
      ++l;
      ++r;
    }
  }
  if (only_left.empty() && only_right.empty()) return;
  auto list = [](const std::vector<std::string>& ids) {
    std::string s;
    const std::size_t shown = std::min<std::size_t>(ids.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) s += (i ? ", " : "") + ids[i];
    if (ids.size() > shown) s += " (and " + std::to_string(ids.size() - shown) + " more)";
    return s;
  };
  std::string msg = "tweet coverage mismatch:";
  if (!only_left.empty()) {
    msg += " only in " + std::string(left_name) + ": " + list(only_left) + ";";
  }
  if (!only_right.empty()) {
    msg += " only in " + std::string(right_name) + ": " + list(only_right) + ";";
  }
  msg.pop_back();
  throw ValidationError(msg);
}

std::string pad(std::string_view s, std::size_t width, bool right_align) {
  std::string out;
  const std::size_t n = s.size() < width ? width - s.size() : 0;
  if (right_align) out.append(n, ' ');
  out.append(s);
  if (!right_align) out.append(n, ' ');
  return out;
}

}  // namespace

ConfusionCounts confusion(const Verdicts& verdicts, const Gold& gold) {
  require_same_keys(verdicts, "verdicts", gold, "gold");
  ConfusionCounts c;
  auto g = gold.begin();
  for (const auto& [tweet, positive] : verdicts) {
    const bool actual = (g++)->second == corpus::Label::kPositive;
    if (positive) {
      ++(actual ? c.tp : c.fp);
    } else {
      ++(actual ? c.fn : c.tn);
    }
  }
  return c;
}

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

Metrics metrics(const ConfusionCounts& c) {
  Metrics m;
  if (c.tp + c.fp > 0) m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

std::vector<std::vector<std::string>> AttributionBreakdown::ordered_subsets() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& [subset, counts] : by_subset) out.push_back(subset);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() < b.size();
  });
  return out;
}

AttributionBreakdown attribution(std::span<const ensemble::EnsembleDecision> decisions,
                                 const Gold& gold) {
  std::map<std::string, const ensemble::EnsembleDecision*> by_tweet;
  for (const auto& d : decisions) {
    if (!by_tweet.emplace(d.tweet_id, &d).second) {
      throw ValidationError("duplicate decision for tweet " + d.tweet_id);
    }
  }
  require_same_keys(by_tweet, "decisions", gold, "gold");

  AttributionBreakdown out;
  if (!decisions.empty()) {
    for (const auto& [model, v] : decisions.front().per_model_verdict) out.models.push_back(model);
  }
  if (out.models.size() > kMaxAttributionModels) {
    throw ValidationError("attribution supports at most 16 models");
  }
  const std::size_t k = out.models.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::string> subset;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) subset.push_back(out.models[i]);
    }
    out.by_subset.emplace(std::move(subset), SubsetCounts{});
  }

  std::map<std::string, std::size_t> missed_tp;
  for (const auto& m : out.models) missed_tp[m] = 0;
  auto g = gold.begin();
  for (const auto& [tweet, d] : by_tweet) {
    const bool actual = (g++)->second == corpus::Label::kPositive;
    if (!d->ensemble_verdict) continue;
    std::vector<std::string> voters;
    for (const auto& [model, v] : d->per_model_verdict) {
      if (missed_tp.count(model) == 0) {
        throw ValidationError("decision for " + tweet + " has an unexpected model " + model);
      }
      if (v) {
        voters.push_back(model);
      } else if (actual) {
        ++missed_tp[model];
      }
    }
    const auto it = out.by_subset.find(voters);
    if (it == out.by_subset.end()) {
      throw ValidationError("decision for " + tweet + " is positive without a positive member");
    }
    if (actual) {
      ++it->second.tp;
      ++out.ensemble_tp;
    } else {
      ++it->second.fp;
      ++out.ensemble_fp;
    }
  }
  for (const auto& [model, n] : missed_tp) {
    out.exclusive_fraction[model] =
        out.ensemble_tp == 0 ? 0.0
                             : static_cast<double>(n) / static_cast<double>(out.ensemble_tp);
  }
  return out;
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) {
    throw ValidationError("standard deviation needs at least 2 runs, got " +
                          std::to_string(values.size()));
  }
  const double n = static_cast<double>(values.size());
  // Shifted by the first value so identical runs give exactly 0.
  const double shift = values.front();
  double sum = 0.0;
  for (double v : values) sum += v - shift;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - shift - mean) * (v - shift - mean);
  return std::sqrt(ss / (n - 1.0));
}

VariabilityReport variability(std::span<const Metrics> per_run, std::string scenario) {
  std::vector<double> f1;
  std::vector<double> recall;
  for (const auto& m : per_run) {
    f1.push_back(m.f1);
    recall.push_back(m.recall);
  }
  VariabilityReport r;
  r.scenario = std::move(scenario);
  r.runs = per_run.size();
  r.f1_stddev = sample_stddev(f1);
  r.recall_stddev = sample_stddev(recall);
  return r;
}

std::vector<RunMetricsRecord> parse_run_metrics(std::string_view content,
                                                std::string_view source) {
  const auto lines = io::split_lines(content);
  if (lines.empty() || lines.front() != kRunMetricsHeader) {
    throw ValidationError(std::string(source) + ": missing header '" +
                          std::string(kRunMetricsHeader) + "'");
  }
  std::vector<RunMetricsRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = std::string(source) + " line " + std::to_string(i + 1);
    const auto fields = io::split(lines[i], '\t');
    if (fields.size() != 6) throw ValidationError("expected 6 fields at " + where);
    RunMetricsRecord r{std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
                       {}};
    if (r.scenario.empty() || r.model_id.empty() || r.run_id.empty()) {
      throw ValidationError("empty scenario, model or run id at " + where);
    }
    double* slots[] = {&r.metrics.precision, &r.metrics.recall, &r.metrics.f1};
    for (int k = 0; k < 3; ++k) {
      const auto v = io::parse_double(fields[3 + k]);
      if (!v || *v < 0.0 || *v > 1.0) {
        throw ValidationError("metric out of range at " + where + ": '" +
                              std::string(fields[3 + k]) + "'");
      }
      *slots[k] = *v;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_run_metrics(std::span<const RunMetricsRecord> records) {
  std::string out(kRunMetricsHeader);
  out.push_back('\n');
  for (const auto& r : records) {
    out += r.scenario + "\t" + r.model_id + "\t" + r.run_id + "\t" +
           io::format_double(r.metrics.precision) + "\t" + io::format_double(r.metrics.recall) +
           "\t" + io::format_double(r.metrics.f1) + "\n";
  }
  return out;
}

VariabilityTable variability_table(std::span<const RunMetricsRecord> records) {
  VariabilityTable t;
  std::map<std::string, std::map<std::string, std::vector<Metrics>>> grouped;
  std::set<std::string> models;
  for (const auto& r : records) {
    if (grouped.count(r.scenario) == 0) t.scenarios.push_back(r.scenario);
    grouped[r.scenario][r.model_id].push_back(r.metrics);
    models.insert(r.model_id);
  }
  t.models.assign(models.begin(), models.end());
  for (const auto& [scenario, by_model] : grouped) {
    for (const auto& [model, runs] : by_model) {
      try {
        t.cells[scenario][model] = variability(runs, scenario);
      } catch (const ValidationError& e) {
        throw ValidationError("scenario '" + scenario + "', model " + model + ": " + e.what());
      }
    }
  }
  return t;
}

std::string format_variability_table(const VariabilityTable& table) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header1 = {"Index", "Scenario"};
  std::vector<std::string> header2 = {"", ""};
  for (const auto& m : table.models) {
    header1.push_back(m);
    header1.push_back("");
    header2.push_back("F1 StDev");
    header2.push_back("Recall StDev");
  }
  rows.push_back(header1);
  rows.push_back(header2);
  for (std::size_t i = 0; i < table.scenarios.size(); ++i) {
    const auto& scenario = table.scenarios[i];
    std::vector<std::string> row = {std::to_string(i), scenario};
    for (const auto& m : table.models) {
      const auto& cells = table.cells.at(scenario);
      const auto it = cells.find(m);
      if (it == cells.end()) {
        row.push_back("-");
        row.push_back("-");
      } else {
        row.push_back(io::format_fixed(it->second.f1_stddev, 3));
        row.push_back(io::format_fixed(it->second.recall_stddev, 3));
      }
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(header1.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) line += " | ";
      line += pad(rows[r][c], widths[c], r >= 2 && c != 1);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::vector<RunMetricsRecord> per_run_metrics(const predictions::RunMatrix& m,
                                              const Gold& gold,
                                              const ensemble::EnsembleConfig& cfg,
                                              const std::string& scenario) {
  std::vector<RunMetricsRecord> out;
  const auto& tweets = m.tweet_ids();
  for (const auto& model : m.models()) {
    const double threshold = cfg.threshold_for(model);
    for (const auto& run : m.runs(model)) {
      const auto probs = m.probs(model, run);
      Verdicts v;
      for (std::size_t i = 0; i < tweets.size(); ++i) {
        v.emplace(tweets[i], ensemble::verdict(probs[i], threshold));
      }
      out.push_back({scenario, model, run, metrics(confusion(v, gold))});
    }
  }
  return out;
}

predictions::RunMatrix filter_runs_by_f1(const predictions::RunMatrix& m, const Gold& gold,
                                         const ensemble::EnsembleConfig& cfg, double min_f1) {
  std::set<std::pair<std::string, std::string>> keep;
  for (const auto& r : per_run_metrics(m, gold, cfg, "")) {
    if (r.metrics.f1 >= min_f1) keep.emplace(r.model_id, r.run_id);
  }
  return m.filter_runs([&](const std::string& model, const std::string& run) {
    return keep.count({model, run}) != 0;
  });
}

}  // namespace adrpipe::evaluate
