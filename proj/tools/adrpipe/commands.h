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

#ifndef ADRPIPE_TOOLS_COMMANDS_H_
#define ADRPIPE_TOOLS_COMMANDS_H_

#include <optional>
#include <string>
#include <vector>

// Option structs filled by the argument parser in main.cc, and the command
// bodies that act on them. Commands throw adrpipe::Error subclasses; main
// maps them to exit codes.
namespace adrpipe::tools {

struct PreprocessOptions {
  std::string input;
  std::string output;
  std::string lexicon;
  std::string stages = "anonymize,handles,hashtags,lowercase,drugnorm";
};
void cmd_preprocess(const PreprocessOptions& o);

struct TokensOptions {
  std::string vocab;
  std::vector<std::string> compare;
  bool stats = false;
  std::string input;
  std::string lexicon;
  std::string stages;
};
void cmd_tokens(const TokensOptions& o);

struct IngestOptions {
  std::vector<std::string> pred;
  bool check = false;
  std::string gold;
  std::optional<double> min_dev_f1;
  std::string output;
};
void cmd_ingest(const IngestOptions& o);

struct EnsembleOptions {
  std::vector<std::string> pred;
  std::vector<std::string> thresholds;
  double default_threshold = 0.5;
  bool no_default = false;
  std::string output;
};
void cmd_ensemble(const EnsembleOptions& o);

struct EvaluateOptions {
  std::string decisions;
  std::string gold;
  std::string report;
  std::string format;
};
void cmd_evaluate(const EvaluateOptions& o);

struct VariabilityOptions {
  std::string metrics;
  std::vector<std::string> scenarios;
  std::string output;
};
void cmd_variability(const VariabilityOptions& o);

struct BaselineTrainOptions {
  std::string config;
  std::string input;
  std::string output;
};
void cmd_baseline_train(const BaselineTrainOptions& o);

struct BaselinePredictOptions {
  std::string model;
  std::string input;
  std::string output;
  std::string model_id;
  std::string run_id = "r1";
};
void cmd_baseline_predict(const BaselinePredictOptions& o);

struct BaselineProtocolOptions {
  std::string config;
  std::string train;
  std::string eval;
  std::string output;
  std::optional<int> runs;
};
void cmd_baseline_protocol(const BaselineProtocolOptions& o);

struct SplitOptions {
  std::string input;
  double fraction = 0.8;
  unsigned long long seed = 0;
  std::string train_output;
  std::string dev_output;
};
void cmd_split(const SplitOptions& o);

struct SynthOptions {
  std::size_t count = 5000;
  double positive_rate = 0.08;
  unsigned long long seed = 1;
  double label_noise = 0.04;
  std::string lexicon;
  std::string output;
};
void cmd_synth(const SynthOptions& o);

struct ReproduceOptions {
  std::string config;
};
void cmd_reproduce(const ReproduceOptions& o);

}  // namespace adrpipe::tools

#endif  // ADRPIPE_TOOLS_COMMANDS_H_
