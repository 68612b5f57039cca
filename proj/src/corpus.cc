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

#include <cmath>
#include <span>
#include <unordered_set>

#include "adrpipe/error.h"
#include "adrpipe/io.h"
#include "adrpipe/rng.h"

namespace adrpipe::corpus {

namespace {

bool has_line_break_or_tab(std::string_view s) {
  return s.find_first_of("\t\n\r") != std::string_view::npos;
}

}  // namespace

Dataset::Dataset(std::vector<LabeledTweet> records) : records_(std::move(records)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(records_.size());
  for (const LabeledTweet& r : records_) {
    if (r.tweet_id.empty()) throw ValidationError("empty tweet_id");
    if (has_line_break_or_tab(r.tweet_id)) {
      throw ValidationError("tweet_id contains tab or newline: " + r.tweet_id);
    }
    if (r.text.find_first_of("\t\n") != std::string::npos) {
      throw ValidationError("text of " + r.tweet_id + " contains tab or newline");
    }
    if (r.label != Label::kNegative && r.label != Label::kPositive) {
      throw ValidationError("label out of range for " + r.tweet_id);
    }
    if (!seen.insert(r.tweet_id).second) {
      throw ValidationError("duplicate tweet_id " + r.tweet_id);
    }
    if (r.label == Label::kPositive) {
      ++positive_count_;
    } else {
      ++negative_count_;
    }
  }
}

std::map<std::string, Label> Dataset::gold() const {
  std::map<std::string, Label> out;
  for (const LabeledTweet& r : records_) out.emplace(r.tweet_id, r.label);
  return out;
}

Dataset parse_dataset(std::string_view content, std::string_view source) {
  const auto lines = io::split_lines(content);
  std::vector<LabeledTweet> records;
  records.reserve(lines.size());
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (i == 0 && line == kDatasetHeader) continue;
    const auto fields = io::split(line, '\t');
    const std::string where = std::string(source) + " line " + std::to_string(line_no);
    if (fields.size() != 3) {
      throw ValidationError("expected 3 tab-separated fields at " + where + ", got " +
                            std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ValidationError("empty tweet_id at " + where);
    Label label;
    if (fields[1] == "0") {
      label = Label::kNegative;
    } else if (fields[1] == "1") {
      label = Label::kPositive;
    } else {
      throw ValidationError("label out of range at line " + std::to_string(line_no) +
                            " of " + std::string(source) + ": '" +
                            std::string(fields[1]) + "'");
    }
    if (!seen.insert(fields[0]).second) {
      throw ValidationError("duplicate tweet_id " + std::string(fields[0]) + " at " +
                            where);
    }
    records.push_back({std::string(fields[0]), std::string(fields[2]), label});
  }
  return Dataset(std::move(records));
}

Dataset load_dataset(const std::filesystem::path& path) {
  return parse_dataset(io::read_file(path), path.string());
}

std::string format_dataset(const Dataset& d) {
  std::string out(kDatasetHeader);
  out.push_back('\n');
  for (const LabeledTweet& r : d.records()) {
    out += r.tweet_id;
    out += r.label == Label::kPositive ? "\t1\t" : "\t0\t";
    out += r.text;
    out.push_back('\n');
  }
  return out;
}

void save_dataset(const std::filesystem::path& path, const Dataset& d) {
  io::write_file_atomic(path, format_dataset(d));
}

Split stratified_split(const Dataset& d, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("train fraction must lie in (0, 1), got " +
                          io::format_double(train_fraction));
  }
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < d.size(); ++i) {
    (d.records()[i].label == Label::kPositive ? positives : negatives).push_back(i);
  }

  Rng rng(seed);
  std::vector<bool> in_train(d.size(), false);
  for (std::vector<std::size_t>* group : {&positives, &negatives}) {
    shuffle(std::span<std::size_t>(*group), rng);
    const auto take = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(group->size())));
    for (std::size_t k = 0; k < take; ++k) in_train[(*group)[k]] = true;
  }

  std::vector<LabeledTweet> train;
  std::vector<LabeledTweet> dev;
  for (std::size_t i = 0; i < d.size(); ++i) {
    (in_train[i] ? train : dev).push_back(d.records()[i]);
  }
  return {Dataset(std::move(train)), Dataset(std::move(dev))};
}

Dataset duplicate_positives(const Dataset& d, int extra_copies) {
  if (extra_copies < 0) throw ValidationError("extra_copies must be >= 0");
  std::vector<LabeledTweet> out;
  out.reserve(d.size() + d.positive_count() * static_cast<std::size_t>(extra_copies));
  for (const LabeledTweet& r : d.records()) {
    out.push_back(r);
    if (r.label != Label::kPositive) continue;
    for (int k = 1; k <= extra_copies; ++k) {
      LabeledTweet copy = r;
      copy.tweet_id += "#dup" + std::to_string(k);
      out.push_back(std::move(copy));
    }
  }
  return Dataset(std::move(out));
}

}  // namespace adrpipe::corpus
