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

#include "adrpipe/reproduce.h"

#include <optional>
#include <set>
#include <utility>

#include "adrpipe/baseline.h"
#include "adrpipe/corpus.h"
#include "adrpipe/ensemble.h"
#include "adrpipe/error.h"
#include "adrpipe/io.h"
#include "adrpipe/manifest.h"
#include "adrpipe/predictions.h"
#include "adrpipe/preprocess.h"
#include "adrpipe/synthetic.h"

namespace adrpipe::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::set<std::string> kTopLevelKeys = {
    "dataset", "synthetic", "lexicon",  "preprocess",  "split",      "baseline",
    "predictions", "gold",  "ensemble", "min_dev_f1", "variability", "output_dir"};

template <typename F>
auto run_stage(std::string_view stage, F&& f) -> decltype(f()) {
  const std::string prefix = "stage " + std::string(stage) + ": ";
  try {
    return f();
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(prefix + e.what());
  } catch (const json::exception& e) {
    throw ValidationError(prefix + e.what());
  }
}

void check_keys(const json& j, const std::set<std::string>& allowed, std::string_view where) {
  if (!j.is_object()) throw ValidationError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key) == 0) {
      throw ValidationError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

struct Scenario {
  std::string label;
  int duplicate_positives = 0;
  std::optional<double> positive_weight;
};

}  // namespace

ReproduceResult reproduce(const fs::path& config_path) {
  const fs::path base = config_path.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

  RunManifest manifest = make_manifest("reproduce");
  manifest.inputs["config"] = config_path.string();
  ReproduceResult result;

  const json cfg = run_stage("config", [&] {
    json j = json::parse(io::read_file(config_path));
    check_keys(j, kTopLevelKeys, "config");
    if (j.contains("baseline") == j.contains("predictions")) {
      throw ValidationError("config needs exactly one of 'baseline' or 'predictions'");
    }
    if (!j.contains("output_dir")) throw ValidationError("config needs 'output_dir'");
    if (j.contains("predictions")) {
      for (const char* key : {"dataset", "synthetic", "lexicon", "preprocess", "split", "variability"}) {
        if (j.contains(key)) throw ValidationError(std::string("'") + key + "' needs 'baseline'");
      }
      if (!j.contains("gold")) throw ValidationError("prediction mode needs a 'gold' dataset");
    } else if (j.contains("gold")) {
      throw ValidationError("'gold' needs 'predictions'");
    }
    return j;
  });
  manifest.config = cfg;
  const bool baseline_mode = cfg.contains("baseline");
  const fs::path out_dir =
      run_stage("config", [&] { return resolve(cfg.at("output_dir").get<std::string>()); });

  // Preprocessing configuration and lexicon.
  std::shared_ptr<const preprocess::DrugLexicon> lexicon;
  if (cfg.contains("lexicon")) {
    const fs::path p = resolve(cfg.at("lexicon").get<std::string>());
    manifest.inputs["lexicon"] = p.string();
    lexicon = run_stage("lexicon", [&] {
      return std::make_shared<const preprocess::DrugLexicon>(preprocess::DrugLexicon::load(p));
    });
  }
  std::optional<preprocess::PipelineConfig> pipeline;
  if (baseline_mode) pipeline = run_stage("preprocess", [&] {
    std::vector<preprocess::Stage> stages = preprocess::all_stages();
    if (cfg.contains("preprocess")) {
      const json& p = cfg.at("preprocess");
      check_keys(p, {"stages"}, "preprocess");
      if (p.contains("stages")) {
        stages.clear();
        for (const auto& s : p.at("stages")) stages.push_back(preprocess::parse_stage(s.get<std::string>()));
      }
    }
    return preprocess::PipelineConfig(std::move(stages), lexicon);
  });

  // Ensemble thresholds.
  const ensemble::EnsembleConfig ens_cfg = run_stage("ensemble", [&] {
    ensemble::EnsembleConfig c;
    if (cfg.contains("ensemble")) {
      const json& e = cfg.at("ensemble");
      check_keys(e, {"default_threshold", "thresholds"}, "ensemble");
      if (e.contains("default_threshold")) {
        const json& d = e.at("default_threshold");
        c.set_default_threshold(d.is_null() ? std::nullopt : std::optional<double>(d.get<double>()));
      }
      if (e.contains("thresholds")) {
        for (const auto& [model, t] : e.at("thresholds").items()) c.set_threshold(model, t.get<double>());
      }
    }
    return c;
  });

  predictions::RunMatrix matrix;
  evaluate::Gold gold;
  std::vector<Scenario> scenarios;
  std::vector<baseline::ModelSpec> specs;
  int runs = 0;
  corpus::Dataset train_set;
  corpus::Dataset dev_set;
  std::map<std::string, std::string> files;  // output name -> content

  if (baseline_mode) {
    const corpus::Dataset raw = run_stage("dataset", [&] {
      if (cfg.contains("dataset") == cfg.contains("synthetic")) {
        throw ValidationError("baseline mode needs exactly one of 'dataset' or 'synthetic'");
      }
      if (cfg.contains("dataset")) {
        const fs::path p = resolve(cfg.at("dataset").get<std::string>());
        manifest.inputs["dataset"] = p.string();
        return corpus::load_dataset(p);
      }
      const json& s = cfg.at("synthetic");
      check_keys(s, {"count", "positive_rate", "seed", "label_noise"}, "synthetic");
      synthetic::SyntheticOptions opt;
      opt.count = s.value("count", opt.count);
      opt.positive_rate = s.value("positive_rate", opt.positive_rate);
      opt.seed = s.value("seed", opt.seed);
      opt.label_noise = s.value("label_noise", opt.label_noise);
      manifest.seeds["synthetic"] = opt.seed;
      if (!lexicon) throw ValidationError("synthetic data needs 'lexicon' for drug names");
      return synthetic::generate(opt, *lexicon);
    });
    const corpus::Dataset clean =
        run_stage("preprocess", [&] { return preprocess::preprocess_dataset(raw, *pipeline); });
    const corpus::Split split = run_stage("split", [&] {
      double fraction = 0.8;
      std::uint64_t seed = 0;
      if (cfg.contains("split")) {
        const json& s = cfg.at("split");
        check_keys(s, {"train_fraction", "seed"}, "split");
        fraction = s.value("train_fraction", fraction);
        seed = s.value("seed", seed);
      }
      manifest.seeds["split"] = seed;
      return corpus::stratified_split(clean, fraction, seed);
    });
    train_set = split.train;
    dev_set = split.dev;
    gold = split.dev.gold();
    files["train.tsv"] = corpus::format_dataset(split.train);
    files["dev.tsv"] = corpus::format_dataset(split.dev);

    const auto records = run_stage("baseline", [&] {
      const json& b = cfg.at("baseline");
      check_keys(b, {"runs", "models"}, "baseline");
      runs = b.value("runs", 5);
      specs = baseline::specs_from_json(b.at("models"));
      for (const auto& s : specs) manifest.seeds["baseline." + s.model_id] = s.config.seed;
      if (cfg.contains("variability")) {
        const json& v = cfg.at("variability");
        check_keys(v, {"scenarios"}, "variability");
        for (const auto& item : v.at("scenarios")) {
          check_keys(item, {"label", "duplicate_positives", "positive_weight"}, "scenario");
          Scenario sc;
          sc.label = item.at("label").get<std::string>();
          sc.duplicate_positives = item.value("duplicate_positives", 0);
          if (item.contains("positive_weight")) sc.positive_weight = item.at("positive_weight").get<double>();
          scenarios.push_back(std::move(sc));
        }
      }
      return baseline::run_protocol(split.train, split.dev, specs, runs);
    });
    files["predictions.tsv"] = predictions::format_predictions(records);
    matrix = run_stage("ingest", [&] { return predictions::RunMatrix::from_records(records); });
  } else {
    if (cfg.contains("variability")) {
      throw ValidationError("stage config: variability scenarios need 'baseline' mode");
    }
    gold = run_stage("gold", [&] {
      if (!cfg.contains("gold")) throw ValidationError("prediction mode needs a 'gold' dataset");
      const fs::path p = resolve(cfg.at("gold").get<std::string>());
      manifest.inputs["gold"] = p.string();
      return corpus::load_dataset(p).gold();
    });
    matrix = run_stage("ingest", [&] {
      std::vector<fs::path> paths;
      for (const auto& p : cfg.at("predictions")) paths.push_back(resolve(p.get<std::string>()));
      for (std::size_t i = 0; i < paths.size(); ++i) {
        manifest.inputs["predictions." + std::to_string(i)] = paths[i].string();
      }
      return predictions::load_predictions(paths);
    });
  }

  if (cfg.contains("min_dev_f1")) {
    matrix = run_stage("ingest", [&] {
      return evaluate::filter_runs_by_f1(matrix, gold, ens_cfg, cfg.at("min_dev_f1").get<double>());
    });
  }
  result.warnings = predictions::run_count_warnings(matrix);

  const auto decisions = run_stage("ensemble", [&] {
    return ensemble::decide(predictions::average_runs(matrix), ens_cfg);
  });
  files["decisions.tsv"] = ensemble::format_decisions(decisions);

  result.report = run_stage("evaluate", [&] { return evaluate::build_eval_report(decisions, gold); });

  // Run-to-run variability: the main runs, then each configured scenario.
  std::vector<evaluate::RunMetricsRecord> run_metrics = run_stage("variability", [&] {
    auto all = evaluate::per_run_metrics(matrix, gold, ens_cfg, "Original");
    for (const Scenario& sc : scenarios) {
      std::vector<baseline::ModelSpec> scenario_specs = specs;
      if (sc.positive_weight) {
        for (auto& s : scenario_specs) s.config.positive_weight = *sc.positive_weight;
      }
      const corpus::Dataset scenario_train =
          corpus::duplicate_positives(train_set, sc.duplicate_positives);
      const auto records = baseline::run_protocol(scenario_train, dev_set, scenario_specs, runs);
      const auto scenario_matrix = predictions::RunMatrix::from_records(records);
      auto rows = evaluate::per_run_metrics(scenario_matrix, gold, ens_cfg, sc.label);
      all.insert(all.end(), rows.begin(), rows.end());
    }
    return all;
  });
  files["run_metrics.tsv"] = evaluate::format_run_metrics(run_metrics);
  bool have_variability = true;
  for (const auto& model : matrix.models()) have_variability = have_variability && matrix.run_count(model) >= 2;
  if (have_variability) {
    result.variability =
        run_stage("variability", [&] { return evaluate::variability_table(run_metrics); });
  } else {
    result.warnings.push_back("variability skipped: every model needs at least 2 runs");
  }

  // Render. The manifest lists every output before any file is written.
  std::vector<std::string> names;
  for (const auto& [name, content] : files) names.push_back(name);
  names.insert(names.end(), {"report.json", "report.tsv", "report.txt", "manifest.json"});
  if (have_variability) names.push_back("variability.txt");
  for (const auto& name : names) manifest.outputs[name] = (out_dir / name).string();

  json report_json = evaluate::eval_report_json(result.report, manifest);
  if (have_variability) {
    json rows = json::array();
    for (const auto& scenario : result.variability.scenarios) {
      for (const auto& [model, cell] : result.variability.cells.at(scenario)) {
        rows.push_back({{"scenario", scenario},
                        {"model", model},
                        {"runs", cell.runs},
                        {"f1_stddev", evaluate::round4(cell.f1_stddev)},
                        {"recall_stddev", evaluate::round4(cell.recall_stddev)}});
      }
    }
    report_json["variability"] = rows;
    files["variability.txt"] = evaluate::format_variability_table(result.variability);
  }
  report_json["warnings"] = result.warnings;
  files["report.json"] = report_json.dump(2) + "\n";
  files["report.tsv"] = evaluate::eval_report_tsv(result.report, manifest);
  files["report.txt"] = "# adrpipe " + manifest.tool_version + " reproduce " +
                        config_path.string() + " at " + manifest.timestamp + "\n\n" +
                        evaluate::eval_report_table(result.report);
  files["manifest.json"] = manifest.to_json().dump(2) + "\n";

  run_stage("write", [&] {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    for (const auto& [name, content] : files) {
      io::write_file_atomic(out_dir / name, content);
      result.outputs[name] = out_dir / name;
    }
    return 0;
  });
  return result;
}

}  // namespace adrpipe::cli
