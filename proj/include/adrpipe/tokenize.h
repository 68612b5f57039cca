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

#ifndef ADRPIPE_TOKENIZE_H_
#define ADRPIPE_TOKENIZE_H_

#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace adrpipe::tokenize {

inline constexpr std::string_view kContinuationPrefix = "##";
inline constexpr std::string_view kUnknownToken = "[UNK]";
inline constexpr std::size_t kDefaultMaxWordChars = 100;

// WordPiece vocabulary. Continuation pieces are stored with their "##"
// prefix; the unknown token must be present.
class SubwordVocab {
 public:
  explicit SubwordVocab(const std::vector<std::string>& tokens,
                        std::size_t max_word_chars = kDefaultMaxWordChars);

  // One token per line; empty lines are ignored.
  static SubwordVocab parse(std::string_view content, std::string_view source = "<vocab>");
  static SubwordVocab load(const std::filesystem::path& path);

  bool contains(const std::string& token) const { return tokens_.count(token) != 0; }
  std::size_t size() const { return tokens_.size(); }
  std::size_t max_word_chars() const { return max_word_chars_; }

 private:
  std::unordered_set<std::string> tokens_;
  std::size_t max_word_chars_;
};

using TokenSequence = std::vector<std::string>;

// Greedy longest-match-first segmentation of a single whitespace-free word.
// Returns {"[UNK]"} when some position has no vocabulary match or the word
// is longer than the vocabulary's max_word_chars code points.
TokenSequence wordpiece_tokenize(std::string_view word, const SubwordVocab& vocab);

bool is_unknown(const TokenSequence& tokens);

struct TokenizationReport {
  std::string word_a;
  std::string word_b;
  TokenSequence tokens_a;
  TokenSequence tokens_b;
  std::set<std::string> shared_tokens;
};

TokenizationReport overlap_report(std::string_view word_a, std::string_view word_b,
                                  const SubwordVocab& vocab);

struct TokenStats {
  std::size_t total_words = 0;
  std::size_t unk_words = 0;
  double unk_rate = 0.0;
};

// Whitespace-splits every text and counts words that tokenize to [UNK].
TokenStats corpus_token_stats(std::span<const std::string> texts, const SubwordVocab& vocab);

}  // namespace adrpipe::tokenize

#endif  // ADRPIPE_TOKENIZE_H_
