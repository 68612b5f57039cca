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
#include <string>
#include <vector>

#include "adrpipe/error.h"
#include "adrpipe/io.h"
#include "adrpipe/rng.h"
#include "doctest.h"
#include "test_util.h"

namespace adrpipe::predictions {
namespace {

std::vector<PredictionRecord> grid(const std::string& model, int runs, int tweets, Rng& rng) {
  std::vector<PredictionRecord> out;
  for (int r = 1; r <= runs; ++r) {
    for (int t = 1; t <= tweets; ++t) {
      out.push_back({model, "r" + std::to_string(r), "t" + std::to_string(t), rng.uniform01()});
    }
  }
  return out;
}

std::string message_of(const std::vector<PredictionRecord>& records) {
  try {
    RunMatrix::from_records(records);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST_CASE("two files assemble into one matrix") {
  testing::TempDir dir("pred_load");
  Rng rng(5);
  const auto a = grid("bert-large", 5, 3, rng);
  const auto b = grid("biobert", 5, 3, rng);
  io::write_file_atomic(dir / "a.tsv", format_predictions(a));
  io::write_file_atomic(dir / "b.tsv", format_predictions(b));
  const std::vector<std::filesystem::path> paths = {dir / "a.tsv", dir / "b.tsv"};
  const RunMatrix m = load_predictions(paths);
  CHECK(m.models() == std::vector<std::string>{"bert-large", "biobert"});
  CHECK(m.run_count("bert-large") == 5);
  CHECK(m.run_count("biobert") == 5);
  CHECK(m.tweet_ids().size() == 3);

  const std::vector<std::filesystem::path> reversed = {dir / "b.tsv", dir / "a.tsv"};
  CHECK(load_predictions(reversed) == m);
}

TEST_CASE("record order does not matter") {
  Rng rng(11);
  auto records = grid("m", 4, 20, rng);
  const RunMatrix m = RunMatrix::from_records(records);
  shuffle(std::span(records), rng);
  CHECK(RunMatrix::from_records(records) == m);
}

TEST_CASE("ragged runs are rejected") {
  Rng rng(1);
  auto records = grid("biobert", 5, 8, rng);
  records.erase(std::remove_if(records.begin(), records.end(),
                               [](const PredictionRecord& r) {
                                 return r.run_id == "r3" && r.tweet_id == "t7";
                               }),
                records.end());
  CHECK(message_of(records).find("run r3 of biobert missing tweet t7") != std::string::npos);
}

TEST_CASE("duplicates and bad ids are rejected") {
  std::vector<PredictionRecord> dup = {{"m", "r1", "t1", 0.2}, {"m", "r1", "t1", 0.3}};
  CHECK(message_of(dup).find("duplicate prediction") != std::string::npos);
  CHECK_FALSE(message_of({{"m:x", "r1", "t1", 0.2}}).empty());
  CHECK_FALSE(message_of({{"m", "r,1", "t1", 0.2}}).empty());
  CHECK_FALSE(message_of({{"m", "r1", "t1", 1.2}}).empty());
  CHECK(message_of({}).find("no prediction records") != std::string::npos);
}

TEST_CASE("probability parsing") {
  const std::string header = std::string(kPredictionHeader) + "\n";
  CHECK_THROWS_WITH_AS(parse_prediction_records(header + "m\tr1\tt1\t1.2\n", "p.tsv"),
                       doctest::Contains("probability out of range at p.tsv line 2"),
                       ValidationError);
  CHECK_THROWS_AS(parse_prediction_records(header + "m\tr1\tt1\tabc\n"), ValidationError);
  CHECK_THROWS_AS(parse_prediction_records(header + "m\tr1\tt1\tnan\n"), ValidationError);
  CHECK_THROWS_AS(parse_prediction_records("m\tr1\tt1\t0.5\n"), ValidationError);
  const auto ok = parse_prediction_records(header + "m\tr1\tt1\t1\nm\tr2\tt1\t0\n");
  REQUIRE(ok.size() == 2);
  CHECK(ok[0].prob == 1.0);
}

TEST_CASE("format and parse round trip exactly") {
  Rng rng(3);
  const auto records = grid("clinicalbert", 3, 10, rng);
  const auto again = parse_prediction_records(format_predictions(records));
  REQUIRE(again.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(again[i].prob == records[i].prob);
}

TEST_CASE("average runs") {
  std::vector<PredictionRecord> records;
  const double values[] = {0.2, 0.4, 0.6, 0.8, 1.0};
  for (int r = 0; r < 5; ++r) records.push_back({"m", "r" + std::to_string(r + 1), "t1", values[r]});
  const AveragedPredictions avg = average_runs(RunMatrix::from_records(records));
  CHECK(avg.probs("m")[0] == doctest::Approx(0.6).epsilon(1e-15));

  const AveragedPredictions single =
      average_runs(RunMatrix::from_records({{"m", "r1", "t1", 0.37}}));
  CHECK(single.probs("m")[0] == 0.37);
}

TEST_CASE("averaging is invariant to run relabeling and stays in range") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    auto records = grid("m", 5, 30, rng);
    const AveragedPredictions avg = average_runs(RunMatrix::from_records(records));
    // Rotate run labels.
    for (auto& r : records) {
      const int k = r.run_id[1] - '0';
      r.run_id = "r" + std::to_string(k % 5 + 1);
    }
    const AveragedPredictions relabeled = average_runs(RunMatrix::from_records(records));
    CHECK(relabeled.by_model() == avg.by_model());

    const RunMatrix m = RunMatrix::from_records(records);
    for (std::size_t t = 0; t < m.tweet_ids().size(); ++t) {
      double lo = 1.0;
      double hi = 0.0;
      for (const auto& run : m.runs("m")) {
        lo = std::min(lo, m.probs("m", run)[t]);
        hi = std::max(hi, m.probs("m", run)[t]);
      }
      CHECK(avg.probs("m")[t] >= lo);
      CHECK(avg.probs("m")[t] <= hi);
    }
  }
}

TEST_CASE("run count warnings and filtering") {
  Rng rng(8);
  auto records = grid("a", 5, 4, rng);
  const auto b = grid("b", 3, 4, rng);
  records.insert(records.end(), b.begin(), b.end());
  const RunMatrix m = RunMatrix::from_records(records);
  const auto warnings = run_count_warnings(m);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("b") != std::string::npos);

  const RunMatrix kept =
      m.filter_runs([](const std::string& model, const std::string&) { return model == "a"; });
  CHECK(kept.models() == std::vector<std::string>{"a"});
  CHECK(kept.records().size() == 20);
}

}  // namespace
}  // namespace adrpipe::predictions
