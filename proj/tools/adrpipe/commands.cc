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

#include "commands.h"

#include <filesystem>
#include <iostream>
#include <set>

#include "adrpipe/baseline.h"
#include "adrpipe/corpus.h"
#include "adrpipe/ensemble.h"
#include "adrpipe/error.h"
#include "adrpipe/evaluate.h"
#include "adrpipe/io.h"
#include "adrpipe/manifest.h"
#include "adrpipe/predictions.h"
#include "adrpipe/preprocess.h"
#include "adrpipe/report.h"
#include "adrpipe/reproduce.h"
#include "adrpipe/synthetic.h"
#include "adrpipe/tokenize.h"

namespace adrpipe::tools {

namespace {

namespace fs = std::filesystem;

std::vector<fs::path> to_paths(const std::vector<std::string>& items) {
  return {items.begin(), items.end()};
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "adrpipe: warning: " << w << "\n";
}

std::shared_ptr<const preprocess::DrugLexicon> maybe_lexicon(const std::string& path) {
  if (path.empty()) return nullptr;
  return std::make_shared<const preprocess::DrugLexicon>(preprocess::DrugLexicon::load(path));
}

nlohmann::json load_json(const std::string& path) {
  try {
    return nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string sibling(const fs::path& input, std::string_view suffix) {
  fs::path p = input;
  p.replace_extension();
  return p.string() + std::string(suffix);
}

}  // namespace

void cmd_preprocess(const PreprocessOptions& o) {
  const preprocess::PipelineConfig cfg(preprocess::parse_stage_list(o.stages),
                                       maybe_lexicon(o.lexicon));
  const corpus::Dataset in = corpus::load_dataset(o.input);
  const corpus::Dataset out = preprocess::preprocess_dataset(in, cfg);
  corpus::save_dataset(o.output, out);
  std::cout << "preprocessed " << out.size() << " tweets -> " << o.output << "\n";
}

void cmd_tokens(const TokensOptions& o) {
  const auto vocab = tokenize::SubwordVocab::load(o.vocab);
  if (o.compare.empty() == !o.stats) {
    throw ValidationError("tokens needs exactly one of --compare <a> <b> or --stats");
  }
  if (!o.compare.empty()) {
    const auto r = tokenize::overlap_report(o.compare[0], o.compare[1], vocab);
    auto join = [](const auto& tokens) {
      std::string s;
      for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t;
      return s;
    };
    std::cout << r.word_a << ": " << join(r.tokens_a) << "\n";
    std::cout << r.word_b << ": " << join(r.tokens_b) << "\n";
    std::cout << "shared: " << (r.shared_tokens.empty() ? "(none)" : join(r.shared_tokens)) << "\n";
    return;
  }
  if (o.input.empty()) throw ValidationError("--stats needs --input <tsv>");
  corpus::Dataset d = corpus::load_dataset(o.input);
  if (!o.stages.empty()) {
    const preprocess::PipelineConfig cfg(preprocess::parse_stage_list(o.stages),
                                         maybe_lexicon(o.lexicon));
    d = preprocess::preprocess_dataset(d, cfg);
  }
  std::vector<std::string> texts;
  for (const auto& r : d.records()) texts.push_back(r.text);
  const auto s = tokenize::corpus_token_stats(texts, vocab);
  std::cout << "total_words\t" << s.total_words << "\nunk_words\t" << s.unk_words
            << "\nunk_rate\t" << io::format_fixed(s.unk_rate) << "\n";
}

void cmd_ingest(const IngestOptions& o) {
  predictions::RunMatrix m = predictions::load_predictions(to_paths(o.pred));
  if (o.min_dev_f1) {
    if (o.gold.empty()) throw ValidationError("--min-dev-f1 needs --gold");
    const auto gold = corpus::load_dataset(o.gold).gold();
    m = evaluate::filter_runs_by_f1(m, gold, ensemble::EnsembleConfig(), *o.min_dev_f1);
  }
  print_warnings(predictions::run_count_warnings(m));
  if (!o.output.empty()) {
    io::write_file_atomic(o.output, predictions::format_predictions(m.records()));
  }
  std::cout << (o.check ? "ok: " : "") << m.models().size() << " models, "
            << m.tweet_ids().size() << " tweets\n";
  for (const auto& model : m.models()) {
    std::cout << "  " << model << ": " << m.run_count(model) << " runs\n";
  }
}

void cmd_ensemble(const EnsembleOptions& o) {
  ensemble::EnsembleConfig cfg;
  cfg.set_default_threshold(o.no_default ? std::nullopt : std::optional<double>(o.default_threshold));
  for (const auto& t : o.thresholds) {
    const auto [model, value] = ensemble::parse_threshold_assignment(t);
    cfg.set_threshold(model, value);
  }
  const auto m = predictions::load_predictions(to_paths(o.pred));
  print_warnings(predictions::run_count_warnings(m));
  const auto decisions = ensemble::decide(predictions::average_runs(m), cfg);
  io::write_file_atomic(o.output, ensemble::format_decisions(decisions));
  std::size_t positives = 0;
  for (const auto& d : decisions) positives += d.ensemble_verdict;
  std::cout << decisions.size() << " decisions, " << positives << " positive -> " << o.output
            << "\n";
}

void cmd_evaluate(const EvaluateOptions& o) {
  const auto decisions = ensemble::parse_decisions(io::read_file(o.decisions), o.decisions);
  const auto gold = corpus::load_dataset(o.gold).gold();
  const auto report = evaluate::build_eval_report(decisions, gold);

  // "--report json|tsv|table" prints to stdout; anything else is a path.
  const bool to_stdout = o.report == "json" || o.report == "tsv" || o.report == "table";
  std::string format = o.format;
  if (to_stdout) {
    format = o.report;
  } else if (format.empty()) {
    const auto ext = fs::path(o.report).extension();
    format = ext == ".json" ? "json" : ext == ".txt" ? "table" : "tsv";
  }
  if (format != "json" && format != "tsv" && format != "table") {
    throw ValidationError("--format must be json, tsv or table");
  }

  RunManifest manifest = make_manifest("evaluate");
  manifest.inputs = {{"decisions", o.decisions}, {"gold", o.gold}};
  if (!to_stdout) manifest.outputs = {{"report", o.report}};
  std::string content;
  if (format == "json") {
    content = evaluate::eval_report_json(report, manifest).dump(2) + "\n";
  } else if (format == "tsv") {
    content = evaluate::eval_report_tsv(report, manifest);
  } else {
    content = "# adrpipe " + manifest.tool_version + " evaluate at " + manifest.timestamp +
              "\n\n" + evaluate::eval_report_table(report);
  }
  if (to_stdout) {
    std::cout << content;
  } else {
    io::write_file_atomic(o.report, content);
    std::cout << evaluate::eval_report_table(report);
  }
}

void cmd_variability(const VariabilityOptions& o) {
  auto records = evaluate::parse_run_metrics(io::read_file(o.metrics), o.metrics);
  if (!o.scenarios.empty()) {
    const std::set<std::string> keep(o.scenarios.begin(), o.scenarios.end());
    std::erase_if(records, [&](const auto& r) { return keep.count(r.scenario) == 0; });
    for (const auto& s : keep) {
      if (std::none_of(records.begin(), records.end(),
                       [&](const auto& r) { return r.scenario == s; })) {
        throw ValidationError("scenario '" + s + "' not found in " + o.metrics);
      }
    }
  }
  const std::string table =
      evaluate::format_variability_table(evaluate::variability_table(records));
  if (!o.output.empty()) io::write_file_atomic(o.output, table);
  std::cout << table;
}

void cmd_baseline_train(const BaselineTrainOptions& o) {
  const auto cfg = baseline::config_from_json(load_json(o.config));
  const auto d = corpus::load_dataset(o.input);
  const auto model = baseline::train(d, cfg);
  model.save(o.output);
  std::cout << "trained on " << d.size() << " tweets -> " << o.output << "\n";
}

void cmd_baseline_predict(const BaselinePredictOptions& o) {
  if (o.model_id.empty()) throw ValidationError("--model-id is required");
  const auto model = baseline::BaselineModel::load(o.model);
  const auto d = corpus::load_dataset(o.input);
  std::vector<predictions::PredictionRecord> out;
  for (const auto& r : d.records()) {
    out.push_back({o.model_id, o.run_id, r.tweet_id, model.predict_prob(r.text)});
  }
  io::write_file_atomic(o.output, predictions::format_predictions(out));
  std::cout << out.size() << " predictions -> " << o.output << "\n";
}

void cmd_baseline_protocol(const BaselineProtocolOptions& o) {
  const nlohmann::json cfg = load_json(o.config);
  if (!cfg.is_object() || !cfg.contains("models")) {
    throw ValidationError(o.config + ": expected {\"runs\": N, \"models\": [...]}");
  }
  const auto specs = baseline::specs_from_json(cfg.at("models"));
  int runs = o.runs.value_or(5);
  if (!o.runs && cfg.contains("runs")) {
    if (!cfg.at("runs").is_number_integer()) throw ValidationError("runs must be an integer");
    runs = cfg.at("runs").get<int>();
  }
  const auto train = corpus::load_dataset(o.train);
  const auto eval = corpus::load_dataset(o.eval);
  const auto records = baseline::run_protocol(train, eval, specs, runs);
  io::write_file_atomic(o.output, predictions::format_predictions(records));
  std::cout << specs.size() << " models x " << runs << " runs x " << eval.size()
            << " tweets = " << records.size() << " predictions -> " << o.output << "\n";
}

void cmd_split(const SplitOptions& o) {
  const auto d = corpus::load_dataset(o.input);
  const auto split = corpus::stratified_split(d, o.fraction, o.seed);
  const std::string train_path = o.train_output.empty() ? sibling(o.input, ".train.tsv") : o.train_output;
  const std::string dev_path = o.dev_output.empty() ? sibling(o.input, ".dev.tsv") : o.dev_output;
  corpus::save_dataset(train_path, split.train);
  corpus::save_dataset(dev_path, split.dev);
  std::cout << "train: " << split.train.size() << " (" << split.train.positive_count()
            << " positive) -> " << train_path << "\n"
            << "dev: " << split.dev.size() << " (" << split.dev.positive_count()
            << " positive) -> " << dev_path << "\n";
}

void cmd_synth(const SynthOptions& o) {
  const auto lexicon = preprocess::DrugLexicon::load(o.lexicon);
  synthetic::SyntheticOptions opt;
  opt.count = o.count;
  opt.positive_rate = o.positive_rate;
  opt.seed = o.seed;
  opt.label_noise = o.label_noise;
  const auto d = synthetic::generate(opt, lexicon);
  corpus::save_dataset(o.output, d);
  std::cout << d.size() << " tweets (" << d.positive_count() << " positive) -> " << o.output
            << "\n";
}

void cmd_reproduce(const ReproduceOptions& o) {
  const auto result = cli::reproduce(o.config);
  print_warnings(result.warnings);
  std::cout << evaluate::eval_report_table(result.report);
  if (!result.variability.scenarios.empty()) {
    std::cout << "\nRun-to-run standard deviations\n"
              << evaluate::format_variability_table(result.variability);
  }
  std::cout << "\noutputs:\n";
  for (const auto& [name, path] : result.outputs) std::cout << "  " << path.string() << "\n";
}

}  // namespace adrpipe::tools
