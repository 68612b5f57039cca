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

#include <map>
#include <string>
#include <vector>

#include "adrpipe/error.h"
#include "adrpipe/predictions.h"
#include "adrpipe/rng.h"
#include "doctest.h"

namespace adrpipe::ensemble {
namespace {

using predictions::AveragedPredictions;

AveragedPredictions one_tweet(double bert, double biobert, double clinical) {
  return AveragedPredictions::from_map(
      {{"bert", {{"t1", bert}}}, {"biobert", {{"t1", biobert}}}, {"clinical", {{"t1", clinical}}}});
}

AveragedPredictions random_avg(Rng& rng, int models, int tweets) {
  std::map<std::string, std::map<std::string, double>> by_model;
  for (int m = 0; m < models; ++m) {
    for (int t = 0; t < tweets; ++t) {
      by_model["m" + std::to_string(m)]["t" + std::to_string(t)] = rng.uniform01();
    }
  }
  return AveragedPredictions::from_map(by_model);
}

TEST_CASE("or rule") {
  EnsembleConfig cfg;
  auto d = decide(one_tweet(0.4, 0.7, 0.2), cfg);
  REQUIRE(d.size() == 1);
  CHECK(d[0].per_model_verdict == std::map<std::string, bool>{
                                      {"bert", false}, {"biobert", true}, {"clinical", false}});
  CHECK(d[0].ensemble_verdict);

  CHECK_FALSE(decide(one_tweet(0.4, 0.45, 0.2), cfg)[0].ensemble_verdict);
}

TEST_CASE("raised threshold") {
  EnsembleConfig cfg;
  cfg.set_threshold("bert", 0.5);
  cfg.set_threshold("biobert", 0.6);
  cfg.set_threshold("clinical", 0.6);
  const auto d = decide(one_tweet(0.3, 0.55, 0.1), cfg);
  CHECK_FALSE(d[0].per_model_verdict.at("biobert"));
  CHECK_FALSE(d[0].ensemble_verdict);
}

TEST_CASE("missing threshold without default") {
  EnsembleConfig cfg;
  cfg.set_default_threshold(std::nullopt);
  cfg.set_threshold("bert", 0.5);
  CHECK_THROWS_AS(decide(one_tweet(0.3, 0.55, 0.1), cfg), ValidationError);
  CHECK_THROWS_AS(cfg.set_threshold("bert", 1.0), ValidationError);
  CHECK_THROWS_AS(cfg.set_threshold("bert", 0.0), ValidationError);
}

TEST_CASE("single model boundary") {
  const auto v = single_model_decide({{"a", 0.5}, {"b", 0.0}, {"c", 1.0}, {"d", 0.55}}, 0.5);
  CHECK(v.at("a"));
  CHECK_FALSE(v.at("b"));
  CHECK(v.at("c"));
  CHECK(v.at("d"));
  CHECK_FALSE(single_model_decide({{"d", 0.55}}, 0.6).at("d"));
  for (double t : {0.01, 0.3, 0.99}) {
    CHECK_FALSE(single_model_decide({{"x", 0.0}}, t).at("x"));
    CHECK(single_model_decide({{"x", 1.0}}, t).at("x"));
  }
}

TEST_CASE("threshold assignment parsing") {
  CHECK(parse_threshold_assignment("biobert=0.6") == std::pair<std::string, double>{"biobert", 0.6});
  CHECK_THROWS_AS(parse_threshold_assignment("biobert"), ValidationError);
  CHECK_THROWS_AS(parse_threshold_assignment("=0.6"), ValidationError);
  CHECK_THROWS_AS(parse_threshold_assignment("a=1.5"), ValidationError);
}

TEST_CASE("union, monotonicity and max equivalence on random instances") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int models = 1 + static_cast<int>(rng.uniform_index(4));
    const auto avg = random_avg(rng, models, 50);
    EnsembleConfig cfg;
    for (const auto& m : avg.models()) cfg.set_threshold(m, 0.05 + 0.9 * rng.uniform01());
    const auto base = decide(avg, cfg);

    for (const auto& d : base) {
      bool any = false;
      for (const auto& m : avg.models()) {
        CHECK(d.per_model_verdict.at(m) == (d.per_model_prob.at(m) >= cfg.threshold_for(m)));
        any = any || d.per_model_verdict.at(m);
      }
      CHECK(d.ensemble_verdict == any);
    }

    EnsembleConfig lower = cfg;
    const std::string target = avg.models()[rng.uniform_index(avg.models().size())];
    lower.set_threshold(target, cfg.threshold_for(target) * rng.uniform01() + 1e-9);
    const auto lowered = decide(avg, lower);
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i].ensemble_verdict) CHECK(lowered[i].ensemble_verdict);
    }

    const double theta = 0.05 + 0.9 * rng.uniform01();
    EnsembleConfig flat;
    flat.set_default_threshold(theta);
    for (const auto& d : decide(avg, flat)) {
      double best = 0.0;
      for (const auto& [m, p] : d.per_model_prob) best = std::max(best, p);
      CHECK(d.ensemble_verdict == (best >= theta));
    }
  }
}

TEST_CASE("decisions are ordered by tweet id") {
  const auto avg = AveragedPredictions::from_map({{"m", {{"t2", 0.1}, {"t10", 0.9}, {"t1", 0.5}}}});
  const auto d = decide(avg, EnsembleConfig{});
  REQUIRE(d.size() == 3);
  CHECK(d[0].tweet_id == "t1");
  CHECK(d[1].tweet_id == "t10");
  CHECK(d[2].tweet_id == "t2");
}

TEST_CASE("decision file round trip") {
  Rng rng(4);
  const auto avg = random_avg(rng, 3, 40);
  const auto d = decide(avg, EnsembleConfig{});
  const std::string text = format_decisions(d);
  CHECK(parse_decisions(text) == d);
  CHECK(text.find("m0:") != std::string::npos);

  CHECK_THROWS_AS(parse_decisions("t1\ta:0.7\ta:1\t0\n"), ValidationError);
  CHECK_THROWS_AS(parse_decisions("t1\ta:0.7\ta:1\t1\nt2\tb:0.7\tb:1\t1\n"), ValidationError);
}

}  // namespace
}  // namespace adrpipe::ensemble
