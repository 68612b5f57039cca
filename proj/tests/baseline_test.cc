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

#include <cmath>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "adrpipe/corpus.h"
#include "adrpipe/error.h"
#include "adrpipe/preprocess.h"
#include "adrpipe/rng.h"
#include "adrpipe/synthetic.h"
#include "doctest.h"
#include "test_util.h"

namespace adrpipe::baseline {
namespace {

using corpus::Dataset;
using corpus::Label;

Dataset toy_set() {
  const char* pos[] = {"rash after dose", "awful rash today", "rash and itching", "dose gave rash",
                       "rash rash rash", "new rash on arm", "rash again", "rash spreading",
                       "itchy rash now", "my rash is back"};
  const char* neg[] = {"sunny park walk", "lovely sunny day", "sunny and warm", "walk in sunny park",
                       "sunny sunny", "bright sunny sky", "sunny again", "sunny morning",
                       "warm sunny noon", "the sun is sunny"};
  std::vector<corpus::LabeledTweet> records;
  for (int i = 0; i < 10; ++i) {
    records.push_back({"p" + std::to_string(i), pos[i], Label::kPositive});
    records.push_back({"n" + std::to_string(i), neg[i], Label::kNegative});
  }
  return Dataset(std::move(records));
}

Dataset fixture_dataset() {
  const auto lex = std::make_shared<const preprocess::DrugLexicon>(
      preprocess::DrugLexicon::load(testing::data_path("lexicon.tsv")));
  return preprocess::preprocess_dataset(corpus::load_dataset(testing::data_path("corpus.tsv")),
                                        preprocess::PipelineConfig::full(lex));
}

std::size_t positives_hit(const BaselineModel& m, const Dataset& d) {
  std::size_t hits = 0;
  for (const auto& r : d.records()) {
    if (r.label == Label::kPositive && m.predict_prob(r.text) >= 0.5) ++hits;
  }
  return hits;
}

TEST_CASE("separable toy set is fit exactly") {
  const Dataset d = toy_set();
  const BaselineModel m = train(d, BaselineConfig{});
  for (const auto& r : d.records()) {
    CAPTURE(r.text);
    CHECK((m.predict_prob(r.text) >= 0.5) == (r.label == Label::kPositive));
  }
}

TEST_CASE("training is bit identical for a fixed seed") {
  const Dataset d = fixture_dataset();
  BaselineConfig cfg;
  cfg.seed = 42;
  CHECK(train(d, cfg) == train(d, cfg));
  BaselineConfig other = cfg;
  other.seed = 43;
  CHECK_FALSE(train(d, other) == train(d, cfg));
}

TEST_CASE("single label data is rejected") {
  const Dataset d({{"a", "x", Label::kNegative}, {"b", "y", Label::kNegative}});
  CHECK_THROWS_AS(train(d, BaselineConfig{}), ValidationError);
}

TEST_CASE("positive weight does not lower train recall on the fixture") {
  const Dataset d = fixture_dataset();
  std::size_t previous = 0;
  for (double w : {1.0, 2.0, 3.0, 5.0}) {
    BaselineConfig cfg;
    cfg.positive_weight = w;
    cfg.epochs = 2;
    const std::size_t hits = positives_hit(train(d, cfg), d);
    CAPTURE(w);
    CHECK(hits >= previous);
    previous = hits;
  }
}

TEST_CASE("predictions are strictly inside the unit interval") {
  const BaselineModel m = train(toy_set(), BaselineConfig{});
  CHECK(m.predict_prob("") == doctest::Approx(sigmoid(m.bias())).epsilon(1e-15));
  for (const char* t : {"rash", "sunny", "", "zzz", "rash rash rash rash rash rash rash"}) {
    const double p = m.predict_prob(t);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
  }
}

TEST_CASE("saved model predicts identically") {
  testing::TempDir dir("baseline_io");
  BaselineConfig cfg;
  cfg.feature_mode = FeatureMode::kWord;
  cfg.ngram_lo = 1;
  cfg.ngram_hi = 2;
  const BaselineModel m = train(fixture_dataset(), cfg);
  m.save(dir / "model.txt");
  const BaselineModel again = BaselineModel::load(dir / "model.txt");
  CHECK(again == m);
  for (const auto& r : fixture_dataset().records()) {
    CHECK(again.predict_prob(r.text) == m.predict_prob(r.text));
  }
  CHECK_THROWS_AS(BaselineModel::deserialize("not a model\n"), ValidationError);
}

TEST_CASE("config validation and json") {
  BaselineConfig cfg;
  cfg.feature_buckets = 1000;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = BaselineConfig{};
  cfg.positive_weight = 0.5;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = BaselineConfig{};
  cfg.ngram_lo = 4;
  cfg.ngram_hi = 3;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  BaselineConfig custom;
  custom.feature_mode = FeatureMode::kWord;
  custom.positive_weight = 3.0;
  custom.seed = 77;
  CHECK(config_from_json(config_to_json(custom)) == custom);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"epoch", 3}}), ValidationError);
}

TEST_CASE("features") {
  BaselineConfig cfg;
  CHECK(extract_features("", cfg).index.empty());
  const SparseFeatures f = extract_features("quetiapine gave me tremors", cfg);
  double norm = 0.0;
  for (double v : f.value) norm += v * v;
  CHECK(norm == doctest::Approx(1.0));
  for (std::size_t i = 1; i < f.index.size(); ++i) CHECK(f.index[i - 1] < f.index[i]);
}

TEST_CASE("analytic gradient matches finite differences") {
  Rng rng(31);
  BaselineConfig cfg;
  cfg.feature_buckets = 64;
  cfg.ngram_lo = 1;
  cfg.ngram_hi = 2;
  std::vector<SparseFeatures> xs;
  std::vector<int> ys;
  const char* words[] = {"rash", "dose", "sunny", "sleep", "fog", "park", "tired", "calm"};
  for (int i = 0; i < 12; ++i) {
    std::string text;
    for (int k = 0; k < 4; ++k) text += std::string(words[rng.uniform_index(8)]) + " ";
    xs.push_back(extract_features(text, cfg));
    ys.push_back(static_cast<int>(rng.uniform_index(2)));
  }
  std::vector<double> w(64);
  for (double& v : w) v = rng.uniform01() - 0.5;
  const double b = 0.3;
  const LossGradient g = loss_and_gradient(xs, ys, w, b, 0.01, 2.0);
  const double h = 1e-6;
  for (std::size_t j = 0; j < w.size(); ++j) {
    auto plus = w;
    auto minus = w;
    plus[j] += h;
    minus[j] -= h;
    const double numeric = (loss_and_gradient(xs, ys, plus, b, 0.01, 2.0).loss -
                            loss_and_gradient(xs, ys, minus, b, 0.01, 2.0).loss) /
                           (2 * h);
    CHECK(g.grad_weights[j] == doctest::Approx(numeric).epsilon(1e-6).scale(1e-3));
  }
  const double nb = (loss_and_gradient(xs, ys, w, b + h, 0.01, 2.0).loss -
                     loss_and_gradient(xs, ys, w, b - h, 0.01, 2.0).loss) /
                    (2 * h);
  CHECK(g.grad_bias == doctest::Approx(nb).epsilon(1e-6));
}

TEST_CASE("protocol output shape") {
  const Dataset d = fixture_dataset();
  const corpus::Split s = corpus::stratified_split(d, 0.6, 1);
  std::vector<corpus::LabeledTweet> first;
  for (std::size_t i = 0; i < 100 && i < s.dev.size(); ++i) first.push_back(s.dev.records()[i]);
  const Dataset eval(first);
  REQUIRE(eval.size() == 100);
  BaselineConfig cfg;
  cfg.feature_buckets = 1 << 12;
  cfg.epochs = 2;
  std::vector<ModelSpec> specs = {{"a", cfg}, {"b", cfg}, {"c", cfg}};
  specs[1].config.feature_mode = FeatureMode::kWord;
  specs[1].config.ngram_lo = 1;
  specs[1].config.ngram_hi = 1;
  specs[2].config.seed = 100;
  const auto records = run_protocol(s.train, eval, specs, 5);
  CHECK(records.size() == 1500);
  std::set<std::string> runs;
  for (const auto& r : records) runs.insert(r.run_id);
  CHECK(runs == std::set<std::string>{"r1", "r2", "r3", "r4", "r5"});
  CHECK(run_protocol(s.train, eval, specs, 5).size() == records.size());
  CHECK_THROWS_AS(run_protocol(s.train, eval, specs, 0), ValidationError);
}

TEST_CASE("char and word members disagree on synthetic data") {
  const auto lex = std::make_shared<const preprocess::DrugLexicon>(
      preprocess::DrugLexicon::load(testing::data_path("lexicon.tsv")));
  synthetic::SyntheticOptions opt;
  opt.count = 2000;
  const Dataset d = preprocess::preprocess_dataset(synthetic::generate(opt, *lex),
                                                   preprocess::PipelineConfig::full(lex));
  const corpus::Split s = corpus::stratified_split(d, 0.8, 7);
  BaselineConfig chars;
  BaselineConfig words;
  words.feature_mode = FeatureMode::kWord;
  words.ngram_lo = 1;
  words.ngram_hi = 2;
  const BaselineModel a = train(s.train, chars);
  const BaselineModel b = train(s.train, words);
  std::set<std::string> pa;
  std::set<std::string> pb;
  for (const auto& r : s.dev.records()) {
    if (a.predict_prob(r.text) >= 0.5) pa.insert(r.tweet_id);
    if (b.predict_prob(r.text) >= 0.5) pb.insert(r.tweet_id);
  }
  CHECK_FALSE(pa.empty());
  CHECK_FALSE(pb.empty());
  CHECK(pa != pb);
}

}  // namespace
}  // namespace adrpipe::baseline
