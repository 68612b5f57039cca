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

#include "adrpipe/report.h"

#include <algorithm>
#include <cmath>

#include "adrpipe/io.h"

namespace adrpipe::evaluate {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

nlohmann::json counts_json(const ConfusionCounts& c, const Metrics& m) {
  return nlohmann::json{{"tp", c.tp},
                        {"fp", c.fp},
                        {"tn", c.tn},
                        {"fn", c.fn},
                        {"precision", round4(m.precision)},
                        {"recall", round4(m.recall)},
                        {"f1", round4(m.f1)}};
}

std::string percent(double fraction) { return io::format_fixed(100.0 * fraction, 1) + "%"; }

// Renders rows as columns separated by " | "; column 0 left-aligned.
std::string align(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += " | ";
      const std::size_t gap = widths[c] - row[c].size();
      if (c == 0) {
        line += row[c] + std::string(gap, ' ');
      } else {
        line += std::string(gap, ' ') + row[c];
      }
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

double round4(double x) { return std::round(x * 1e4) / 1e4; }

EvalReport build_eval_report(std::span<const ensemble::EnsembleDecision> decisions,
                             const Gold& gold) {
  EvalReport r;
  r.attribution = attribution(decisions, gold);
  r.models = r.attribution.models;
  Verdicts ensemble_verdicts;
  std::map<std::string, Verdicts> member_verdicts;
  for (const auto& d : decisions) {
    ensemble_verdicts.emplace(d.tweet_id, d.ensemble_verdict);
    for (const auto& [model, v] : d.per_model_verdict) member_verdicts[model].emplace(d.tweet_id, v);
  }
  for (const auto& model : r.models) {
    r.member_counts[model] = confusion(member_verdicts[model], gold);
    r.member_metrics[model] = metrics(r.member_counts[model]);
  }
  r.ensemble_counts = confusion(ensemble_verdicts, gold);
  r.ensemble_metrics = metrics(r.ensemble_counts);
  return r;
}

nlohmann::json eval_report_json(const EvalReport& report, const RunManifest& manifest) {
  nlohmann::json members = nlohmann::json::object();
  for (const auto& model : report.models) {
    members[model] = counts_json(report.member_counts.at(model), report.member_metrics.at(model));
  }
  nlohmann::json subsets = nlohmann::json::array();
  for (const auto& subset : report.attribution.ordered_subsets()) {
    const auto& c = report.attribution.by_subset.at(subset);
    subsets.push_back({{"members", subset}, {"tp", c.tp}, {"fp", c.fp}});
  }
  nlohmann::json exclusive = nlohmann::json::object();
  for (const auto& [model, f] : report.attribution.exclusive_fraction) exclusive[model] = round4(f);
  nlohmann::json ensemble = counts_json(report.ensemble_counts, report.ensemble_metrics);
  ensemble["rule"] = "max-positive";
  return nlohmann::json{
      {"manifest", manifest.to_json()},
      {"models", report.models},
      {"members", members},
      {"ensemble", ensemble},
      {"attribution",
       {{"subsets", subsets},
        {"ensemble_tp", report.attribution.ensemble_tp},
        {"ensemble_fp", report.attribution.ensemble_fp},
        {"tp_fraction_missed_by_model", exclusive}}}};
}

std::string eval_report_tsv(const EvalReport& report, const RunManifest& manifest) {
  std::string out = "# manifest\t" + manifest.to_json().dump() + "\n";
  out += "model\ttp\tfp\ttn\tfn\tprecision\trecall\tf1\n";
  auto row = [&](const std::string& name, const ConfusionCounts& c, const Metrics& m) {
    out += name + "\t" + std::to_string(c.tp) + "\t" + std::to_string(c.fp) + "\t" +
           std::to_string(c.tn) + "\t" + std::to_string(c.fn) + "\t" +
           io::format_fixed(m.precision) + "\t" + io::format_fixed(m.recall) + "\t" +
           io::format_fixed(m.f1) + "\n";
  };
  for (const auto& model : report.models) {
    row(model, report.member_counts.at(model), report.member_metrics.at(model));
  }
  row("max-ensemble", report.ensemble_counts, report.ensemble_metrics);
  out += "\nsubset\ttp\tfp\n";
  for (const auto& subset : report.attribution.ordered_subsets()) {
    const auto& c = report.attribution.by_subset.at(subset);
    out += join(subset, "+") + "\t" + std::to_string(c.tp) + "\t" + std::to_string(c.fp) + "\n";
  }
  out += "total\t" + std::to_string(report.attribution.ensemble_tp) + "\t" +
         std::to_string(report.attribution.ensemble_fp) + "\n";
  out += "\nmodel\ttp_fraction_missed_by_model\n";
  for (const auto& [model, f] : report.attribution.exclusive_fraction) {
    out += model + "\t" + io::format_fixed(f) + "\n";
  }
  return out;
}

std::string eval_report_table(const EvalReport& report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {""};
  for (const auto& m : report.models) header.push_back(m);
  header.emplace_back(kEnsembleColumn);
  rows.push_back(header);
  auto metric_row = [&](const std::string& label, double Metrics::*field) {
    std::vector<std::string> row = {label};
    for (const auto& m : report.models) {
      row.push_back(io::format_fixed(report.member_metrics.at(m).*field));
    }
    row.push_back(io::format_fixed(report.ensemble_metrics.*field));
    rows.push_back(std::move(row));
  };
  metric_row("F1-score", &Metrics::f1);
  metric_row("Precision", &Metrics::precision);
  metric_row("Recall", &Metrics::recall);
  std::string out = align(rows);

  out += "\nSources of ensemble true and false positives\n";
  std::vector<std::vector<std::string>> subset_rows = {{"Positive voters", "TP", "FP"}};
  for (const auto& subset : report.attribution.ordered_subsets()) {
    const auto& c = report.attribution.by_subset.at(subset);
    subset_rows.push_back({join(subset, " + "), std::to_string(c.tp), std::to_string(c.fp)});
  }
  subset_rows.push_back({"Total", std::to_string(report.attribution.ensemble_tp),
                         std::to_string(report.attribution.ensemble_fp)});
  out += align(subset_rows);
  out += "\n";
  for (const auto& [model, f] : report.attribution.exclusive_fraction) {
    out += "Ensemble TPs missed by " + model + " (captured only by others): " + percent(f) + "\n";
  }
  return out;
}

}  // namespace adrpipe::evaluate
