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

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adrpipe/error.h"
#include "adrpipe/version.h"
#include "commands.h"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace adrpipe::tools;

  CLI::App app{"adrpipe: adverse drug reaction tweet classification pipeline"};
  app.set_version_flag("--version", std::string(adrpipe::kVersion));
  app.require_subcommand(1);

  PreprocessOptions pre;
  auto* sc_pre = app.add_subcommand("preprocess", "Normalize tweet text");
  sc_pre->add_option("--input", pre.input, "Dataset TSV")->required();
  sc_pre->add_option("--output", pre.output, "Output dataset TSV")->required();
  sc_pre->add_option("--lexicon", pre.lexicon, "Brand->generic lexicon TSV");
  sc_pre->add_option("--stages", pre.stages, "Comma-separated stages in pipeline order")
      ->capture_default_str();
  sc_pre->callback([&] { cmd_preprocess(pre); });

  TokensOptions tok;
  auto* sc_tok = app.add_subcommand("tokens", "Subword tokenization analysis");
  sc_tok->add_option("--vocab", tok.vocab, "Vocabulary file, one token per line")->required();
  sc_tok->add_option("--compare", tok.compare, "Two words to tokenize and compare")
      ->expected(2);
  sc_tok->add_flag("--stats", tok.stats, "Report [UNK] rate over a dataset");
  sc_tok->add_option("--input", tok.input, "Dataset TSV for --stats");
  sc_tok->add_option("--lexicon", tok.lexicon, "Lexicon for --stages drugnorm");
  sc_tok->add_option("--stages", tok.stages, "Preprocess the texts before --stats");
  sc_tok->callback([&] { cmd_tokens(tok); });

  IngestOptions ing;
  auto* sc_ing = app.add_subcommand("ingest", "Validate and merge prediction files");
  sc_ing->add_option("--pred", ing.pred, "Prediction files")->required();
  sc_ing->add_flag("--check", ing.check, "Validate only");
  sc_ing->add_option("--gold", ing.gold, "Gold dataset for --min-dev-f1");
  sc_ing->add_option("--min-dev-f1", ing.min_dev_f1, "Drop runs scoring below this F1");
  sc_ing->add_option("--output", ing.output, "Merged prediction file");
  sc_ing->callback([&] { cmd_ingest(ing); });

  EnsembleOptions ens;
  auto* sc_ens = app.add_subcommand("ensemble", "Run-average and max-positive ensemble");
  sc_ens->add_option("--pred", ens.pred, "Prediction files")->required();
  sc_ens->add_option("--threshold", ens.thresholds, "Per-model threshold, model=value");
  sc_ens->add_option("--default-threshold", ens.default_threshold, "Threshold for other models")
      ->capture_default_str();
  sc_ens->add_flag("--no-default-threshold", ens.no_default,
                   "Require an explicit threshold for every model");
  sc_ens->add_option("--output", ens.output, "Decisions TSV")->required();
  sc_ens->callback([&] { cmd_ensemble(ens); });

  EvaluateOptions ev;
  auto* sc_ev = app.add_subcommand("evaluate", "Score decisions against gold labels");
  sc_ev->add_option("--decisions", ev.decisions, "Decisions TSV")->required();
  sc_ev->add_option("--gold", ev.gold, "Gold dataset TSV")->required();
  sc_ev->add_option("--report", ev.report, "Report path, or json|tsv|table for stdout")
      ->required();
  sc_ev->add_option("--format", ev.format, "json, tsv or table (default: from extension)");
  sc_ev->callback([&] { cmd_evaluate(ev); });

  VariabilityOptions var;
  auto* sc_var = app.add_subcommand("variability", "Run-to-run standard deviations");
  sc_var->add_option("--metrics", var.metrics, "Run metrics TSV")->required();
  sc_var->add_option("--scenario", var.scenarios, "Scenario label(s) to include");
  sc_var->add_option("--output", var.output, "Write the table to a file");
  sc_var->callback([&] { cmd_variability(var); });

  auto* sc_base = app.add_subcommand("baseline", "Hashed n-gram logistic baseline");
  sc_base->require_subcommand(1);
  BaselineTrainOptions btrain;
  auto* sc_btrain = sc_base->add_subcommand("train", "Train one model");
  sc_btrain->add_option("--config", btrain.config, "Baseline config JSON")->required();
  sc_btrain->add_option("--input", btrain.input, "Training dataset TSV")->required();
  sc_btrain->add_option("--output", btrain.output, "Model file")->required();
  sc_btrain->callback([&] { cmd_baseline_train(btrain); });

  BaselinePredictOptions bpred;
  auto* sc_bpred = sc_base->add_subcommand("predict", "Score a dataset with a saved model");
  sc_bpred->add_option("--model", bpred.model, "Model file")->required();
  sc_bpred->add_option("--input", bpred.input, "Dataset TSV")->required();
  sc_bpred->add_option("--output", bpred.output, "Prediction file")->required();
  sc_bpred->add_option("--model-id", bpred.model_id, "model_id column value")->required();
  sc_bpred->add_option("--run-id", bpred.run_id, "run_id column value")->capture_default_str();
  sc_bpred->callback([&] { cmd_baseline_predict(bpred); });

  BaselineProtocolOptions bproto;
  auto* sc_bproto = sc_base->add_subcommand("protocol", "Seeded runs per model spec");
  sc_bproto->add_option("--config", bproto.config, "{\"runs\": N, \"models\": [...]}")
      ->required();
  sc_bproto->add_option("--train", bproto.train, "Training dataset TSV")->required();
  sc_bproto->add_option("--eval", bproto.eval, "Evaluation dataset TSV")->required();
  sc_bproto->add_option("--output", bproto.output, "Prediction file")->required();
  sc_bproto->add_option("--runs", bproto.runs, "Override the configured run count");
  sc_bproto->callback([&] { cmd_baseline_protocol(bproto); });

  SplitOptions sp;
  auto* sc_sp = app.add_subcommand("split", "Stratified train/dev split");
  sc_sp->add_option("--input", sp.input, "Dataset TSV")->required();
  sc_sp->add_option("--fraction", sp.fraction, "Train fraction")->capture_default_str();
  sc_sp->add_option("--seed", sp.seed, "Shuffle seed")->capture_default_str();
  sc_sp->add_option("--train-output", sp.train_output, "Default: <input>.train.tsv");
  sc_sp->add_option("--dev-output", sp.dev_output, "Default: <input>.dev.tsv");
  sc_sp->callback([&] { cmd_split(sp); });

  SynthOptions syn;
  auto* sc_syn = app.add_subcommand("synth", "Generate a synthetic labeled drug-tweet dataset");
  sc_syn->add_option("--count", syn.count, "Number of tweets")->capture_default_str();
  sc_syn->add_option("--positive-rate", syn.positive_rate, "Share of ADR tweets")
      ->capture_default_str();
  sc_syn->add_option("--seed", syn.seed, "Generator seed")->capture_default_str();
  sc_syn->add_option("--label-noise", syn.label_noise, "Share of mismatched wording")
      ->capture_default_str();
  sc_syn->add_option("--lexicon", syn.lexicon, "Lexicon supplying drug names")->required();
  sc_syn->add_option("--output", syn.output, "Dataset TSV")->required();
  sc_syn->callback([&] { cmd_synth(syn); });

  ReproduceOptions rep;
  auto* sc_rep = app.add_subcommand("reproduce", "Run the full pipeline from a config file");
  sc_rep->add_option("--config", rep.config, "Pipeline config JSON")->required();
  sc_rep->callback([&] { cmd_reproduce(rep); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) std::cerr << "\n" << app.help();
    return e.get_exit_code() == 0 ? 0 : kExitValidation;
  } catch (const adrpipe::IoError& e) {
    std::cerr << "adrpipe: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const adrpipe::ValidationError& e) {
    std::cerr << "adrpipe: error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "adrpipe: error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
