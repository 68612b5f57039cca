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

#include "adrpipe/preprocess.h"

#include <algorithm>
#include <array>

#include "adrpipe/error.h"
#include "adrpipe/io.h"
#include "adrpipe/text.h"

namespace adrpipe::preprocess {

namespace {

constexpr std::string_view kUrlPlaceholder = "-URL-";
constexpr std::string_view kHandlePlaceholder = "-TH-";

// Characters peeled off a token before URL/email recognition.
constexpr std::string_view kOpeningPunct = "([{<\"'#@";
constexpr std::string_view kClosingPunct = ")]}>\"'.,;:!?";

bool is_handle_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_';
}

bool is_email_local_char(char c) {
  return is_handle_char(c) || c == '.' || c == '%' || c == '+' || c == '-';
}

bool is_domain_label_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '-';
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != prefix[i]) return false;
  }
  return true;
}

std::optional<std::string_view> email_domain(std::string_view core) {
  const std::size_t at = core.find('@');
  if (at == std::string_view::npos || at == 0) return std::nullopt;
  if (core.find('@', at + 1) != std::string_view::npos) return std::nullopt;
  const std::string_view local = core.substr(0, at);
  const std::string_view domain = core.substr(at + 1);
  if (!std::all_of(local.begin(), local.end(), is_email_local_char)) return std::nullopt;
  const auto labels = io::split(domain, '.');
  if (labels.size() < 2) return std::nullopt;
  for (std::string_view label : labels) {
    if (label.empty() || !std::all_of(label.begin(), label.end(), is_domain_label_char)) {
      return std::nullopt;
    }
  }
  return domain;
}

void anonymize_token(std::string_view token, std::string* out) {
  std::size_t lead = 0;
  while (lead < token.size() && kOpeningPunct.find(token[lead]) != std::string_view::npos) {
    ++lead;
  }
  std::size_t end = token.size();
  while (end > lead && kClosingPunct.find(token[end - 1]) != std::string_view::npos) --end;
  const std::string_view rest = token.substr(lead, end - lead);
  if (starts_with_ci(rest, "http://") || starts_with_ci(rest, "https://") ||
      starts_with_ci(rest, "www.")) {
    out->append(token.substr(0, lead));
    out->append(kUrlPlaceholder);
    out->append(token.substr(end));
    return;
  }
  if (const auto domain = email_domain(token.substr(lead, end - lead))) {
    out->append(token.substr(0, lead));
    out->append(*domain);
    out->append(token.substr(end));
    return;
  }
  out->append(token);
}

bool is_dropped_symbol(char32_t cp) {
  return cp == 0x00A9 || cp == 0x00AE || cp == 0x2122;
}

// Collapses a run of whitespace inside a multi-word key or in text.
std::string normalize_key(std::string_view s) { return text::collapse_whitespace(text::to_lower(s)); }

std::string_view first_word(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    if (text::is_word_delimiter(text::decode_utf8(s, &pos))) return s.substr(0, start);
  }
  return s;
}

// Matches `key` against `s` from offset 0; a space in the key matches one or
// more whitespace code points. Returns the matched byte length.
std::optional<std::size_t> match_key(std::string_view s, std::string_view key) {
  std::size_t i = 0;
  std::size_t k = 0;
  while (k < key.size()) {
    if (key[k] == ' ') {
      std::size_t ws = 0;
      while (i < s.size()) {
        std::size_t next = i;
        if (!text::is_space(text::decode_utf8(s, &next))) break;
        i = next;
        ++ws;
      }
      if (ws == 0) return std::nullopt;
      ++k;
      continue;
    }
    if (i >= s.size() || s[i] != key[k]) return std::nullopt;
    ++i;
    ++k;
  }
  return i;
}

constexpr std::array<std::pair<Stage, std::string_view>, 5> kStageNames = {{
    {Stage::kAnonymize, "anonymize"},
    {Stage::kReplaceHandles, "handles"},
    {Stage::kRemoveHashtags, "hashtags"},
    {Stage::kLowercase, "lowercase"},
    {Stage::kDrugNormalize, "drugnorm"},
}};

}  // namespace

DrugLexicon::DrugLexicon(const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [raw_brand, raw_generic] : entries) {
    std::string brand = normalize_key(raw_brand);
    std::string generic = normalize_key(raw_generic);
    if (brand.empty() || generic.empty()) {
      throw ValidationError("lexicon entry with empty brand or generic name");
    }
    if (brand == generic) throw ValidationError("lexicon maps '" + brand + "' to itself");
    const auto [it, inserted] = entries_.emplace(brand, generic);
    if (!inserted && it->second != generic) {
      throw ValidationError("conflicting lexicon entries for '" + brand + "': '" +
                            it->second + "' vs '" + generic + "'");
    }
  }
  for (const auto& [brand, generic] : entries_) {
    if (entries_.count(generic) != 0) {
      throw ValidationError("generic name '" + generic + "' (from '" + brand +
                            "') is also a brand key");
    }
    const std::string_view head = first_word(brand);
    if (head.empty()) {
      throw ValidationError("lexicon key '" + brand + "' must start with a word character");
    }
    by_first_word_[std::string(head)].push_back({brand, generic});
  }
  for (auto& [word, list] : by_first_word_) {
    std::stable_sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
      return a.key.size() > b.key.size();
    });
  }
}

DrugLexicon DrugLexicon::parse(std::string_view content, std::string_view source) {
  std::vector<std::pair<std::string, std::string>> entries;
  const auto lines = io::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = io::split(line, '\t');
    if (fields.size() != 2) {
      throw ValidationError("expected brand<TAB>generic at " + std::string(source) +
                            " line " + std::to_string(i + 1));
    }
    entries.emplace_back(fields[0], fields[1]);
  }
  return DrugLexicon(entries);
}

DrugLexicon DrugLexicon::load(const std::filesystem::path& path) {
  return parse(io::read_file(path), path.string());
}

std::optional<std::string_view> DrugLexicon::lookup(std::string_view brand) const {
  const auto it = entries_.find(normalize_key(brand));
  if (it == entries_.end()) return std::nullopt;
  return std::string_view(it->second);
}

const std::vector<DrugLexicon::Candidate>* DrugLexicon::candidates(
    std::string_view word) const {
  const auto it = by_first_word_.find(std::string(word));
  return it == by_first_word_.end() ? nullptr : &it->second;
}

std::string_view stage_name(Stage stage) {
  for (const auto& [s, name] : kStageNames) {
    if (s == stage) return name;
  }
  return "?";
}

Stage parse_stage(std::string_view name) {
  for (const auto& [s, n] : kStageNames) {
    if (n == name) return s;
  }
  throw ValidationError("unknown preprocessing stage '" + std::string(name) +
                        "' (expected anonymize, handles, hashtags, lowercase, drugnorm)");
}

std::vector<Stage> parse_stage_list(std::string_view comma_separated) {
  std::vector<Stage> out;
  if (comma_separated.empty()) return out;
  for (std::string_view name : io::split(comma_separated, ',')) out.push_back(parse_stage(name));
  return out;
}

std::vector<Stage> all_stages() {
  std::vector<Stage> out;
  for (const auto& [s, name] : kStageNames) out.push_back(s);
  return out;
}

PipelineConfig::PipelineConfig(std::vector<Stage> stages,
                               std::shared_ptr<const DrugLexicon> lexicon)
    : stages_(std::move(stages)), lexicon_(std::move(lexicon)) {
  for (std::size_t i = 1; i < stages_.size(); ++i) {
    if (stages_[i] <= stages_[i - 1]) {
      throw ValidationError(
          "stages must be distinct and listed in pipeline order: "
          "anonymize, handles, hashtags, lowercase, drugnorm");
    }
  }
  if (enabled(Stage::kDrugNormalize)) {
    if (!enabled(Stage::kLowercase)) {
      throw ValidationError("drug normalization requires the lowercase stage");
    }
    if (lexicon_ == nullptr) throw ValidationError("lexicon required for drug normalization");
  }
}

PipelineConfig PipelineConfig::full(std::shared_ptr<const DrugLexicon> lexicon) {
  return PipelineConfig(all_stages(), std::move(lexicon));
}

bool PipelineConfig::enabled(Stage stage) const {
  return std::find(stages_.begin(), stages_.end(), stage) != stages_.end();
}

std::string anonymize(std::string_view input) {
  std::string stripped;
  stripped.reserve(input.size());
  for (std::size_t pos = 0; pos < input.size();) {
    const std::size_t start = pos;
    if (!is_dropped_symbol(text::decode_utf8(input, &pos))) {
      stripped.append(input.substr(start, pos - start));
    }
  }

  const std::string_view s = stripped;
  std::string out;
  out.reserve(s.size());
  std::size_t token_start = std::string_view::npos;
  for (std::size_t pos = 0; pos < s.size();) {
    const std::size_t start = pos;
    if (text::is_space(text::decode_utf8(s, &pos))) {
      if (token_start != std::string_view::npos) {
        anonymize_token(s.substr(token_start, start - token_start), &out);
        token_start = std::string_view::npos;
      }
      out.append(s.substr(start, pos - start));
    } else if (token_start == std::string_view::npos) {
      token_start = start;
    }
  }
  if (token_start != std::string_view::npos) anonymize_token(s.substr(token_start), &out);
  return out;
}

std::string replace_handles(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool at_word_start = true;
  for (std::size_t pos = 0; pos < s.size();) {
    const std::size_t start = pos;
    const char32_t cp = text::decode_utf8(s, &pos);
    if (cp == U'@' && at_word_start && pos < s.size() && is_handle_char(s[pos])) {
      while (pos < s.size() && is_handle_char(s[pos])) ++pos;
      out.append(kHandlePlaceholder);
      at_word_start = false;
      continue;
    }
    out.append(s.substr(start, pos - start));
    at_word_start = text::is_word_delimiter(cp);
  }
  return out;
}

std::string remove_hashtags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  // A '#' directly after '#' or '@' never starts a word, so "##x" loses only
  // one symbol and "@#x" cannot turn into a handle.
  bool at_word_start = true;
  for (std::size_t pos = 0; pos < s.size();) {
    const std::size_t start = pos;
    const char32_t cp = text::decode_utf8(s, &pos);
    if (cp == U'#' && at_word_start && pos < s.size()) {
      std::size_t next = pos;
      if (!text::is_space(text::decode_utf8(s, &next))) {
        at_word_start = false;
        continue;
      }
    }
    out.append(s.substr(start, pos - start));
    at_word_start = text::is_word_delimiter(cp) && cp != U'#' && cp != U'@';
  }
  return out;
}

std::string drug_normalize(std::string_view s, const DrugLexicon& lex) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    const char32_t cp = text::decode_utf8(s, &pos);
    if (text::is_word_delimiter(cp)) {
      out.append(s.substr(start, pos - start));
      continue;
    }
    // `start` begins a word: the previous code point, if any, was a delimiter
    // or the end of a replaced key.
    const std::string_view rest = s.substr(start);
    const std::string_view word = first_word(rest);
    bool replaced = false;
    if (const auto* candidates = lex.candidates(word)) {
      for (const auto& c : *candidates) {
        const auto len = match_key(rest, c.key);
        if (!len) continue;
        std::size_t after = *len;
        if (after < rest.size() && !text::is_word_delimiter(text::decode_utf8(rest, &after))) {
          continue;
        }
        out.append(c.generic);
        pos = start + *len;
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      out.append(word);
      pos = start + word.size();
    }
  }
  return out;
}

std::string preprocess(std::string_view input, const PipelineConfig& cfg) {
  std::string s(input);
  for (Stage stage : cfg.stages()) {
    switch (stage) {
      case Stage::kAnonymize:
        s = anonymize(s);
        break;
      case Stage::kReplaceHandles:
        s = replace_handles(s);
        break;
      case Stage::kRemoveHashtags:
        s = remove_hashtags(s);
        break;
      case Stage::kLowercase:
        s = text::to_lower(s);
        break;
      case Stage::kDrugNormalize:
        s = drug_normalize(s, *cfg.lexicon());
        break;
    }
  }
  return text::collapse_whitespace(s);
}

corpus::Dataset preprocess_dataset(const corpus::Dataset& d, const PipelineConfig& cfg) {
  std::vector<corpus::LabeledTweet> out;
  out.reserve(d.size());
  for (const auto& r : d.records()) out.push_back({r.tweet_id, preprocess(r.text, cfg), r.label});
  return corpus::Dataset(std::move(out));
}

}  // namespace adrpipe::preprocess
