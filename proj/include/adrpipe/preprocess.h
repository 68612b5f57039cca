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

#ifndef ADRPIPE_PREPROCESS_H_
#define ADRPIPE_PREPROCESS_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adrpipe/corpus.h"

namespace adrpipe::preprocess {

// Brand name -> generic name mapping. Keys and values are stored lowercased
// with internal whitespace collapsed; keys may span several words.
//
// Invariants enforced at construction: no empty key or value, no
// self-mapping, no conflicting duplicate keys, and no generic name that is
// itself a key (generic names are fixpoints of normalization).
class DrugLexicon {
 public:
  DrugLexicon() = default;
  explicit DrugLexicon(const std::vector<std::pair<std::string, std::string>>& entries);

  // `brand<TAB>generic` per line; blank lines and lines starting with '#'
  // are skipped.
  static DrugLexicon parse(std::string_view content, std::string_view source = "<lexicon>");
  static DrugLexicon load(const std::filesystem::path& path);

  const std::map<std::string, std::string>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::optional<std::string_view> lookup(std::string_view brand) const;

  struct Candidate {
    std::string key;
    std::string generic;
  };
  // Keys whose first word is `word`, longest first.
  const std::vector<Candidate>* candidates(std::string_view word) const;

 private:
  std::map<std::string, std::string> entries_;
  std::unordered_map<std::string, std::vector<Candidate>> by_first_word_;
};

enum class Stage { kAnonymize, kReplaceHandles, kRemoveHashtags, kLowercase, kDrugNormalize };

// CLI names: anonymize, handles, hashtags, lowercase, drugnorm.
std::string_view stage_name(Stage stage);
Stage parse_stage(std::string_view name);
std::vector<Stage> parse_stage_list(std::string_view comma_separated);
std::vector<Stage> all_stages();

// Enabled stages, listed in pipeline order, plus the lexicon for drug
// normalization. Invalid combinations are rejected by the constructor.
class PipelineConfig {
 public:
  PipelineConfig(std::vector<Stage> stages, std::shared_ptr<const DrugLexicon> lexicon);

  // Every stage enabled.
  static PipelineConfig full(std::shared_ptr<const DrugLexicon> lexicon);

  const std::vector<Stage>& stages() const { return stages_; }
  bool enabled(Stage stage) const;
  const DrugLexicon* lexicon() const { return lexicon_.get(); }

 private:
  std::vector<Stage> stages_;
  std::shared_ptr<const DrugLexicon> lexicon_;
};

// URLs ("http://", "https://" or "www." at the start of a token) become
// "-URL-"; "local@domain" becomes "domain"; (c), (tm) and (r) symbols are
// dropped.
std::string anonymize(std::string_view text);

// "@" + [A-Za-z0-9_]+ at the start of a word becomes "-TH-".
std::string replace_handles(std::string_view text);

// Drops the single leading '#' of a word.
std::string remove_hashtags(std::string_view text);

// Whole-word, longest-key-first replacement of brand names. `text` must
// already be lowercase.
std::string drug_normalize(std::string_view text, const DrugLexicon& lex);

// Runs the enabled stages in their fixed order, then collapses whitespace.
std::string preprocess(std::string_view text, const PipelineConfig& cfg);

corpus::Dataset preprocess_dataset(const corpus::Dataset& d, const PipelineConfig& cfg);

}  // namespace adrpipe::preprocess

#endif  // ADRPIPE_PREPROCESS_H_
