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


#include "adrpipe/corpus.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "adrpipe/error.h"
#include "adrpipe/io.h"
#include "doctest.h"
#include "test_util.h"

namespace adrpipe::corpus {
namespace {

Dataset make_dataset(int positives, int negatives) {
  std::vector<LabeledTweet> records;
  const int total = positives + negatives;
  for (int i = 0; i < total; ++i) {
    // Interleave labels so order preservation is observable.
    const bool pos = (i % 3 == 0 && positives > 0) || negatives == 0;
    if (pos) {
      --positives;
    } else {
      --negatives;
    }
    records.push_back({"t" + std::to_string(i), "text " + std::to_string(i),
                       pos ? Label::kPositive : Label::kNegative});
  }
  return Dataset(std::move(records));
}

std::multiset<std::string> ids(const Dataset& d) {
  std::multiset<std::string> out;
  for (const auto& r : d.records()) out.insert(r.tweet_id);
  return out;
}

TEST_CASE("parse counts labels and keeps order") {
  const Dataset d = parse_dataset("t1\t1\tI feel dizzy on quetiapine\nt2\t0\tlovely day\n");
  CHECK(d.positive_count() == 1);
  CHECK(d.negative_count() == 1);
  REQUIRE(d.size() == 2);
  CHECK(d.records()[0].tweet_id == "t1");
  CHECK(d.records()[1].text == "lovely day");
}

TEST_CASE("label out of range names the line") {
  try {
    parse_dataset("tweet_id\tlabel\ttext\nt1\t0\tok\nt3\t2\ttext\n");
    FAIL("expected error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("label out of range at line 3") != std::string::npos);
  }
}

TEST_CASE("header only gives empty dataset") {
  const Dataset d = parse_dataset("tweet_id\tlabel\ttext\n");
  CHECK(d.empty());
  CHECK(d.positive_count() == 0);
}

TEST_CASE("malformed lines are rejected") {
  CHECK_THROWS_AS(parse_dataset("t1\t1\n"), ValidationError);
  CHECK_THROWS_AS(parse_dataset("t1\t1\ta\tb\n"), ValidationError);
  CHECK_THROWS_AS(parse_dataset("\t1\tempty id\n"), ValidationError);
  try {
    parse_dataset("t1\t1\ta\nt1\t0\tb\n");
    FAIL("expected error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("t1") != std::string::npos);
  }
}

TEST_CASE("load save load round trip") {
  testing::TempDir dir("corpus_rt");
  const Dataset d = load_dataset(testing::data_path("corpus.tsv"));
  CHECK(d.size() >= 200);
  save_dataset(dir / "out.tsv", d);
  const Dataset again = load_dataset(dir / "out.tsv");
  CHECK(again == d);
  CHECK(again.positive_count() == d.positive_count());
  CHECK(io::read_file(dir / "out.tsv") == format_dataset(d));
}

TEST_CASE("missing file is an io error") {
  CHECK_THROWS_AS(load_dataset("/nonexistent/adrpipe/x.tsv"), IoError);
}

TEST_CASE("stratified split floor counts") {
  const Dataset d = make_dataset(10, 90);
  const Split s = stratified_split(d, 0.8, 123);
  CHECK(s.train.size() == 80);
  CHECK(s.train.positive_count() == 8);
  CHECK(s.dev.size() == 20);
  CHECK(s.dev.positive_count() == 2);

  const Dataset small = make_dataset(5, 5);
  const Split t = stratified_split(small, 0.8, 9);
  CHECK(t.train.positive_count() == 4);
  CHECK(t.train.negative_count() == 4);
  CHECK(t.dev.positive_count() == 1);
  CHECK(t.dev.negative_count() == 1);
}

TEST_CASE("stratified split is deterministic and partitions") {
  const Dataset d = make_dataset(37, 211);
  const Split a = stratified_split(d, 0.8, 7);
  const Split b = stratified_split(d, 0.8, 7);
  CHECK(a.train == b.train);
  CHECK(a.dev == b.dev);

  std::multiset<std::string> joined = ids(a.train);
  const auto dev_ids = ids(a.dev);
  joined.insert(dev_ids.begin(), dev_ids.end());
  CHECK(joined == ids(d));
  for (const auto& id : dev_ids) CHECK(ids(a.train).count(id) == 0);

  const Split c = stratified_split(d, 0.8, 8);
  CHECK_FALSE(c.train == a.train);
}

TEST_CASE("split counts hold for many seeds and fractions") {
  const Dataset d = make_dataset(23, 177);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double fraction = 0.05 + 0.018 * static_cast<double>(seed);
    const Split s = stratified_split(d, fraction, seed * 7919);
    CHECK(s.train.positive_count() ==
          static_cast<std::size_t>(std::floor(fraction * 23)));
    CHECK(s.train.negative_count() ==
          static_cast<std::size_t>(std::floor(fraction * 177)));
    CHECK(s.train.size() + s.dev.size() == d.size());
  }
}

TEST_CASE("split keeps source order inside each side") {
  const Dataset d = make_dataset(10, 30);
  const Split s = stratified_split(d, 0.5, 3);
  auto index_of = [&](const std::string& id) {
    const auto& r = d.records();
    return std::find_if(r.begin(), r.end(), [&](const auto& x) { return x.tweet_id == id; }) -
           r.begin();
  };
  for (std::size_t i = 1; i < s.train.size(); ++i) {
    CHECK(index_of(s.train.records()[i - 1].tweet_id) <
          index_of(s.train.records()[i].tweet_id));
  }
}

TEST_CASE("split rejects fractions outside the open interval") {
  const Dataset d = make_dataset(2, 2);
  CHECK_THROWS_AS(stratified_split(d, 0.0, 1), ValidationError);
  CHECK_THROWS_AS(stratified_split(d, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(stratified_split(d, -0.2, 1), ValidationError);
}

TEST_CASE("duplicate positives") {
  const Dataset d = make_dataset(3, 10);
  const Dataset dup = duplicate_positives(d, 2);
  CHECK(dup.positive_count() == 9);
  CHECK(dup.negative_count() == 10);
  CHECK(dup.size() == 19);
  CHECK(duplicate_positives(d, 0) == d);

  const Dataset one({{"t9", "bad rash", Label::kPositive}, {"t10", "fine", Label::kNegative}});
  const Dataset copies = duplicate_positives(one, 2);
  REQUIRE(copies.size() == 4);
  CHECK(copies.records()[0].tweet_id == "t9");
  CHECK(copies.records()[1].tweet_id == "t9#dup1");
  CHECK(copies.records()[2].tweet_id == "t9#dup2");
  CHECK(copies.records()[2].text == "bad rash");
  CHECK(copies.records()[3].tweet_id == "t10");
}

}  // namespace
}  // namespace adrpipe::corpus
