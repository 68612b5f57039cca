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

#include "adrpipe/synthetic.h"

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adrpipe/error.h"
#include "adrpipe/rng.h"

namespace adrpipe::synthetic {

namespace {

constexpr std::array<std::string_view, 14> kAdrs = {
    "headache",  "nausea",        "dizziness",      "insomnia",     "weight gain",
    "dry mouth", "tremors",       "brain fog",      "night sweats", "rash",
    "heart palpitations", "blurry vision", "muscle cramps", "hair loss"};

constexpr std::array<std::string_view, 10> kAdrStates = {
    "so dizzy",         "cant sleep",        "shaking all day", "sick to my stomach",
    "so drowsy",        "gained 10 pounds",  "itching everywhere", "like a zombie",
    "throwing up",      "sweating buckets"};

constexpr std::array<std::string_view, 5> kGaveMe = {"gave me", "is giving me", "left me with",
                                                      "causes me", "hit me with"};

constexpr std::array<std::string_view, 5> kOpeners = {"took my", "started", "upped my dose of",
                                                      "first night on", "switched to"};

constexpr std::array<std::string_view, 6> kDurations = {"two days",  "a week",   "3 weeks",
                                                        "a month",   "6 months", "a year"};

constexpr std::array<std::string_view, 6> kConditions = {"depression", "bipolar disorder",
                                                         "migraines",  "anxiety",
                                                         "insomnia",   "adhd"};

constexpr std::array<std::string_view, 8> kTails = {"", "", "", " ugh", " smh", " :(",
                                                    " never again", "!!"};

constexpr std::array<std::string_view, 6> kTags = {"#pharma", "#MentalHealth", "#health",
                                                   "#sideeffects", "#meds", "#Monday"};

constexpr std::array<std::string_view, 8> kChatter = {
    "lovely day at the park",        "cant believe the game last night",
    "coffee first then everything",  "who else is watching the finale",
    "traffic is insane this morning", "new phone who dis",
    "pizza for dinner again",        "finally friday"};

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& items, Rng& rng) {
  return items[rng.uniform_index(N)];
}

std::string capitalize_first(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

std::string upper(std::string s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
  }
  return s;
}

class Generator {
 public:
  Generator(const preprocess::DrugLexicon& lexicon, Rng& rng) : rng_(rng) {
    for (const auto& [brand, generic] : lexicon.entries()) pairs_.emplace_back(brand, generic);
    if (pairs_.empty()) throw ValidationError("synthetic data needs a non-empty drug lexicon");
  }

  std::string drug() {
    const auto& [brand, generic] = pairs_[rng_.uniform_index(pairs_.size())];
    std::string name = rng_.bernoulli(0.6) ? brand : generic;
    const double style = rng_.uniform01();
    if (style < 0.5) return capitalize_first(name);
    if (style < 0.6) return upper(name);
    return name;
  }

  std::string positive() {
    std::string d = drug();
    switch (rng_.uniform_index(6)) {
      case 0:
        return d + " " + std::string(pick(kGaveMe, rng_)) + " " + std::string(pick(kAdrs, rng_));
      case 1:
        return std::string(pick(kOpeners, rng_)) + " " + d + " and now im " +
               std::string(pick(kAdrStates, rng_));
      case 2:
        return "been on " + d + " for " + std::string(pick(kDurations, rng_)) + " and the " +
               std::string(pick(kAdrs, rng_)) + " is unreal";
      case 3:
        return std::string(pick(kAdrStates, rng_)) + " since starting " + d;
      case 4:
        return "thanks " + d + " for the " + std::string(pick(kAdrs, rng_));
      default:
        return "coming off " + d + " and the " + std::string(pick(kAdrs, rng_)) +
               " wont stop";
    }
  }

  std::string negative() {
    switch (rng_.uniform_index(10)) {
      case 0:
        return "just picked up my " + drug() + " refill";
      case 1:
        return drug() + " prices went up again";
      case 2:
        return "my doctor switched me to " + drug() + " today";
      case 3:
        return "does " + drug() + " cause " + std::string(pick(kAdrs, rng_)) +
               "? asking for a friend";
      case 4:
        return drug() + " finally helping with my " + std::string(pick(kConditions, rng_));
      case 5:
        return "reading a study on " + drug() + " and " + std::string(pick(kConditions, rng_));
      case 6:
        return "anyone else take " + drug() + " with coffee";
      case 7:
        return std::string(pick(kAdrStates, rng_)) + " today, probably the weather";
      case 8:
        return "new article: " + drug() + " approved for " + std::string(pick(kConditions, rng_));
      default:
        return std::string(pick(kChatter, rng_));
    }
  }

  // Twitter decoration around a core sentence.
  std::string decorate(std::string core) {
    if (rng_.bernoulli(0.25)) {
      core = "@user" + std::to_string(rng_.uniform_index(500)) + " " + core;
    }
    if (rng_.bernoulli(0.5)) core = capitalize_first(std::move(core));
    core += pick(kTails, rng_);
    if (rng_.bernoulli(0.2)) core += " " + std::string(pick(kTags, rng_));
    if (rng_.bernoulli(0.15)) {
      core += " https://t.co/" + std::to_string(100000 + rng_.uniform_index(900000));
    }
    if (rng_.bernoulli(0.03)) {
      core += " dm me at pat" + std::to_string(rng_.uniform_index(100)) + "@mail.com";
    }
    if (rng_.bernoulli(0.02)) core += " \xC2\xAE";
    return core;
  }

 private:
  Rng& rng_;
  std::vector<std::pair<std::string, std::string>> pairs_;
};

}  // namespace

corpus::Dataset generate(const SyntheticOptions& options, const preprocess::DrugLexicon& lexicon) {
  if (!(options.positive_rate >= 0.0 && options.positive_rate <= 1.0)) {
    throw ValidationError("positive_rate must lie in [0, 1]");
  }
  if (!(options.label_noise >= 0.0 && options.label_noise <= 1.0)) {
    throw ValidationError("label_noise must lie in [0, 1]");
  }
  Rng rng(options.seed);
  const auto positives = static_cast<std::size_t>(
      std::llround(static_cast<double>(options.count) * options.positive_rate));
  std::vector<corpus::Label> labels(options.count, corpus::Label::kNegative);
  for (std::size_t i = 0; i < positives; ++i) labels[i] = corpus::Label::kPositive;
  shuffle(std::span<corpus::Label>(labels), rng);

  Generator gen(lexicon, rng);
  const std::size_t width = std::to_string(options.count).size();
  std::vector<corpus::LabeledTweet> records;
  records.reserve(options.count);
  for (std::size_t i = 0; i < options.count; ++i) {
    const bool positive_wording =
        (labels[i] == corpus::Label::kPositive) != rng.bernoulli(options.label_noise);
    std::string core = positive_wording ? gen.positive() : gen.negative();
    std::string id = std::to_string(i + 1);
    id.insert(0, width - id.size(), '0');
    records.push_back({"s" + id, gen.decorate(std::move(core)), labels[i]});
  }
  return corpus::Dataset(std::move(records));
}

}  // namespace adrpipe::synthetic
