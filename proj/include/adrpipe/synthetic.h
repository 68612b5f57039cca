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

#ifndef ADRPIPE_SYNTHETIC_H_
#define ADRPIPE_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>

#include "adrpipe/corpus.h"
#include "adrpipe/preprocess.h"

namespace adrpipe::synthetic {

struct SyntheticOptions {
  std::size_t count = 5000;
  double positive_rate = 0.08;
  std::uint64_t seed = 1;
  // Fraction of records whose wording follows the other class's templates.
  double label_noise = 0.04;
};

// Template-generated drug tweets with Twitter noise (handles, URLs,
// hashtags, emails, mixed case). Drug mentions come from `lexicon`, as
// brand or generic names. Exactly round(count * positive_rate) records are
// positive; the output is fully determined by the options.
corpus::Dataset generate(const SyntheticOptions& options, const preprocess::DrugLexicon& lexicon);

}  // namespace adrpipe::synthetic

#endif  // ADRPIPE_SYNTHETIC_H_
