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

#include "adrpipe/tokenize.h"

#include <algorithm>

#include "adrpipe/error.h"
#include "adrpipe/io.h"
#include "adrpipe/text.h"

namespace adrpipe::tokenize {

SubwordVocab::SubwordVocab(const std::vector<std::string>& tokens, std::size_t max_word_chars)
    : tokens_(tokens.begin(), tokens.end()), max_word_chars_(max_word_chars) {
  if (!contains(std::string(kUnknownToken))) {
    throw ValidationError("vocabulary lacks the unknown token [UNK]");
  }
  if (max_word_chars_ == 0) throw ValidationError("max_word_chars must be positive");
}

SubwordVocab SubwordVocab::parse(std::string_view content, std::string_view source) {
  std::vector<std::string> tokens;
  for (std::string_view line : io::split_lines(content)) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    tokens.emplace_back(line);
  }
  try {
    return SubwordVocab(tokens);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
}

SubwordVocab SubwordVocab::load(const std::filesystem::path& path) {
  return parse(io::read_file(path), path.string());
}

TokenSequence wordpiece_tokenize(std::string_view word, const SubwordVocab& vocab) {
  const std::vector<std::size_t> bounds = text::code_point_boundaries(word);
  const std::size_t chars = bounds.size() - 1;
  if (chars == 0 || chars > vocab.max_word_chars()) return {std::string(kUnknownToken)};

  TokenSequence out;
  std::string candidate;
  std::size_t start = 0;
  while (start < chars) {
    std::size_t end = chars;
    bool found = false;
    for (; end > start; --end) {
      candidate.clear();
      if (start > 0) candidate.append(kContinuationPrefix);
      candidate.append(word.substr(bounds[start], bounds[end] - bounds[start]));
      if (vocab.contains(candidate)) {
        found = true;
        break;
      }
    }
    if (!found) return {std::string(kUnknownToken)};
    out.push_back(candidate);
    start = end;
  }
  return out;
}

bool is_unknown(const TokenSequence& tokens) {
  return tokens.size() == 1 && tokens.front() == kUnknownToken;
}

TokenizationReport overlap_report(std::string_view word_a, std::string_view word_b,
                                  const SubwordVocab& vocab) {
  TokenizationReport r;
  r.word_a = word_a;
  r.word_b = word_b;
  r.tokens_a = wordpiece_tokenize(word_a, vocab);
  r.tokens_b = wordpiece_tokenize(word_b, vocab);
  const std::set<std::string> a(r.tokens_a.begin(), r.tokens_a.end());
  const std::set<std::string> b(r.tokens_b.begin(), r.tokens_b.end());
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(r.shared_tokens, r.shared_tokens.end()));
  return r;
}

TokenStats corpus_token_stats(std::span<const std::string> texts, const SubwordVocab& vocab) {
  TokenStats stats;
  for (const std::string& t : texts) {
    for (std::string_view word : text::split_whitespace(t)) {
      ++stats.total_words;
      if (is_unknown(wordpiece_tokenize(word, vocab))) ++stats.unk_words;
    }
  }
  stats.unk_rate = static_cast<double>(stats.unk_words) /
                   static_cast<double>(std::max<std::size_t>(stats.total_words, 1));
  return stats;
}

}  // namespace adrpipe::tokenize
