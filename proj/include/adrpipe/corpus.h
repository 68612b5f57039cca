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

#ifndef ADRPIPE_CORPUS_H_
#define ADRPIPE_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adrpipe::corpus {

enum class Label : std::uint8_t { kNegative = 0, kPositive = 1 };

inline int to_int(Label label) { return static_cast<int>(label); }

struct LabeledTweet {
  std::string tweet_id;
  std::string text;
  Label label = Label::kNegative;

  friend bool operator==(const LabeledTweet&, const LabeledTweet&) = default;
};

// Ordered, immutable collection of tweets with unique ids. Construction
// validates every record and tallies the label counts.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<LabeledTweet> records);

  const std::vector<LabeledTweet>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t positive_count() const { return positive_count_; }
  std::size_t negative_count() const { return negative_count_; }

  // tweet_id -> label, for scoring.
  std::map<std::string, Label> gold() const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<LabeledTweet> records_;
  std::size_t positive_count_ = 0;
  std::size_t negative_count_ = 0;
};

inline constexpr std::string_view kDatasetHeader = "tweet_id\tlabel\ttext";

// Parses `tweet_id<TAB>label<TAB>text` lines with an optional header line.
// `source` names the input in error messages.
Dataset parse_dataset(std::string_view content, std::string_view source = "<input>");
Dataset load_dataset(const std::filesystem::path& path);

// Serializes with the header line; the output parses back to an equal Dataset.
std::string format_dataset(const Dataset& d);
void save_dataset(const std::filesystem::path& path, const Dataset& d);

struct Split {
  Dataset train;
  Dataset dev;
};

// Label-stratified split. For each label, floor(train_fraction * count)
// records chosen by a seeded Fisher-Yates shuffle go to train and the rest to
// dev. Both outputs keep the input's record order.
Split stratified_split(const Dataset& d, double train_fraction, std::uint64_t seed);

// Repeats each positive record `extra_copies` more times, directly after its
// source, with ids "<id>#dup1", "<id>#dup2", ...
Dataset duplicate_positives(const Dataset& d, int extra_copies);

}  // namespace adrpipe::corpus

#endif  // ADRPIPE_CORPUS_H_
