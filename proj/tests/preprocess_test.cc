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

#include <memory>
#include <string>

#include "adrpipe/corpus.h"
#include "adrpipe/error.h"
#include "adrpipe/text.h"
#include "doctest.h"
#include "test_util.h"

namespace adrpipe::preprocess {
namespace {

std::shared_ptr<const DrugLexicon> two_drug_lexicon() {
  return std::make_shared<const DrugLexicon>(
      std::vector<std::pair<std::string, std::string>>{{"seroquel", "quetiapine"},
                                                       {"zyprexa", "olanzapine"}});
}

std::shared_ptr<const DrugLexicon> fixture_lexicon() {
  return std::make_shared<const DrugLexicon>(DrugLexicon::load(testing::data_path("lexicon.tsv")));
}

TEST_CASE("anonymize") {
  CHECK(anonymize("see https://t.co/abc now") == "see -URL- now");
  CHECK(anonymize("mail john@gmail.com please") == "mail gmail.com please");
  CHECK(anonymize("plain text") == "plain text");
  CHECK(anonymize("www.example.org rocks") == "-URL- rocks");
  CHECK(anonymize("HTTP://X.CO/A") == "-URL-");
  CHECK(anonymize("(http://a.b/c), ok") == "(-URL-), ok");
  CHECK(anonymize("write me at <a.b+c@mail.example.co.uk>.") == "write me at <mail.example.co.uk>.");
  CHECK(anonymize("Lexapro™ and Prozac® ©") == "Lexapro and Prozac ");
  CHECK(anonymize("price @ 5 and a@b") == "price @ 5 and a@b");
}

TEST_CASE("replace handles") {
  CHECK(replace_handles("@john thanks") == "-TH- thanks");
  CHECK(replace_handles("a @b @c") == "a -TH- -TH-");
  CHECK(replace_handles("price @ 5") == "price @ 5");
  CHECK(replace_handles("hi @user_12!") == "hi -TH-!");
  CHECK(replace_handles("(@x)") == "(-TH-)");
  CHECK(replace_handles("mid@word stays") == "mid@word stays");
}

TEST_CASE("remove hashtags") {
  CHECK(remove_hashtags("#headache all day") == "headache all day");
  CHECK(remove_hashtags("##double") == "#double");
  CHECK(remove_hashtags("c# code") == "c# code");
  CHECK(remove_hashtags("so tired (#insomnia)") == "so tired (insomnia)");
  CHECK(remove_hashtags("# alone") == "# alone");
}

TEST_CASE("drug normalize") {
  const auto lex = two_drug_lexicon();
  CHECK(drug_normalize("took seroquel last night", *lex) == "took quetiapine last night");
  CHECK(drug_normalize("zyprexa zombie", *lex) == "olanzapine zombie");
  CHECK(drug_normalize("quetiapine works", *lex) == "quetiapine works");
  CHECK(drug_normalize("seroquelxr is new", *lex) == "seroquelxr is new");
  CHECK(drug_normalize("seroquel-xr", *lex) == "seroquel-xr");
  CHECK(drug_normalize("seroquel, zyprexa!", *lex) == "quetiapine, olanzapine!");
}

TEST_CASE("drug normalize prefers the longest key") {
  const DrugLexicon lex({{"advil", "ibuprofen"}, {"advil pm", "ibuprofen diphenhydramine"}});
  CHECK(drug_normalize("advil pm tonight", lex) == "ibuprofen diphenhydramine tonight");
  CHECK(drug_normalize("advil  pm", lex) == "ibuprofen diphenhydramine");
  CHECK(drug_normalize("advil pmx", lex) == "ibuprofen pmx");
  CHECK(drug_normalize("advil", lex) == "ibuprofen");
}

TEST_CASE("single word keys keep token count") {
  const auto lex = fixture_lexicon();
  const std::string in = "prozac then zoloft then lexapro and effexor";
  const std::string out = drug_normalize(in, *lex);
  CHECK(out == "fluoxetine then sertraline then escitalopram and venlafaxine");
  CHECK(text::split_whitespace(out).size() == text::split_whitespace(in).size());
}

using Entries = std::vector<std::pair<std::string, std::string>>;

TEST_CASE("lexicon validation") {
  CHECK_THROWS_AS(DrugLexicon(Entries{{"a", "a"}}), ValidationError);
  CHECK_THROWS_AS(DrugLexicon(Entries{{"a", "b"}, {"A", "c"}}), ValidationError);
  CHECK_THROWS_AS(DrugLexicon(Entries{{"a", "b"}, {"b", "c"}}), ValidationError);
  CHECK_THROWS_AS(DrugLexicon(Entries{{"", "b"}}), ValidationError);
  const DrugLexicon mixed({{"Seroquel", "Quetiapine"}, {"seroquel", "quetiapine"}});
  CHECK(mixed.size() == 1);
  CHECK(mixed.lookup("seroquel") == "quetiapine");

  const DrugLexicon parsed =
      DrugLexicon::parse("# comment\n\nSeroquel\tquetiapine\r\nzyprexa\tolanzapine\n");
  CHECK(parsed.size() == 2);
  CHECK_THROWS_AS(DrugLexicon::parse("seroquel quetiapine\n"), ValidationError);
}

TEST_CASE("pipeline config invariants") {
  CHECK_THROWS_WITH_AS(PipelineConfig({Stage::kDrugNormalize}, two_drug_lexicon()),
                       doctest::Contains("requires the lowercase stage"), ValidationError);
  CHECK_THROWS_WITH_AS(PipelineConfig::full(nullptr), doctest::Contains("lexicon required"),
                       ValidationError);
  CHECK_THROWS_AS(PipelineConfig({Stage::kLowercase, Stage::kAnonymize}, nullptr),
                  ValidationError);
  CHECK_THROWS_AS(parse_stage("spellcheck"), ValidationError);
  CHECK(parse_stage_list("anonymize,handles,hashtags,lowercase,drugnorm") == all_stages());
  CHECK_NOTHROW(PipelineConfig({Stage::kAnonymize, Stage::kLowercase}, nullptr));
}

TEST_CASE("full pipeline") {
  const auto cfg = PipelineConfig::full(two_drug_lexicon());
  CHECK(preprocess("@john check https://t.co/x #Seroquel ruined me", cfg) ==
        "-th- check -url- quetiapine ruined me");
  CHECK(preprocess("", cfg) == "");
  CHECK(preprocess("  Zyprexa   made me\tsleepy  ", cfg) == "olanzapine made me sleepy");
}

TEST_CASE("stages can be disabled") {
  const PipelineConfig cfg({Stage::kAnonymize, Stage::kReplaceHandles}, nullptr);
  CHECK(preprocess("@Amy #Seroquel https://x.y", cfg) == "-TH- #Seroquel -URL-");
}

TEST_CASE("fixture corpus is idempotent and lowercase stable") {
  const auto cfg = PipelineConfig::full(fixture_lexicon());
  const corpus::Dataset d = corpus::load_dataset(testing::data_path("corpus.tsv"));
  REQUIRE(d.size() >= 200);
  for (const auto& r : d.records()) {
    const std::string once = preprocess(r.text, cfg);
    CAPTURE(r.tweet_id);
    CHECK(preprocess(once, cfg) == once);
    CHECK_FALSE(text::has_upper(once));
  }
}

TEST_CASE("known non idempotent input") {
  // Each pass strips one leading '#'.
  const auto cfg = PipelineConfig::full(two_drug_lexicon());
  CHECK(preprocess("##x", cfg) == "#x");
  CHECK(preprocess("#x", cfg) == "x");
}

TEST_CASE("early stages introduce no foreign characters") {
  const corpus::Dataset d = corpus::load_dataset(testing::data_path("corpus.tsv"));
  for (const auto& r : d.records()) {
    const std::string out = remove_hashtags(replace_handles(anonymize(r.text)));
    std::u32string allowed;
    std::size_t pos = 0;
    while (pos < r.text.size()) allowed.push_back(text::decode_utf8(r.text, &pos));
    allowed += U"-URLTH";
    pos = 0;
    while (pos < out.size()) {
      const char32_t cp = text::decode_utf8(out, &pos);
      CAPTURE(r.tweet_id);
      CHECK(allowed.find(cp) != std::u32string::npos);
    }
  }
}

}  // namespace
}  // namespace adrpipe::preprocess
