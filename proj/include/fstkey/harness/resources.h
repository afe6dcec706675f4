// Copyright 2026 The fstkey Authors.
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

#ifndef FSTKEY_HARNESS_RESOURCES_H_
#define FSTKEY_HARNESS_RESOURCES_H_

#include <string>
#include <utility>
#include <vector>

#include "fstkey/graph/lexicon.h"
#include "fstkey/lm/ngram_model.h"

namespace fstkey {

using WordList = std::vector<std::pair<std::string, double>>;

// Vocabulary is the word list followed by any corpus words it lacks. The
// list's counts, rescaled to prior_weight times the corpus token count, are
// mixed into the unigrams.
NGramModel TrainModel(const std::vector<std::vector<std::string>>& corpus,
                      const WordList& words, int order, double prior_weight = 1.0,
                      double discount = 0.5);

// The first max_words entries (all when max_words <= 0).
WordList TopWords(const WordList& words, int max_words);

std::vector<LexiconEntry> LexiconFor(const WordList& words);

}  // namespace fstkey

#endif  // FSTKEY_HARNESS_RESOURCES_H_
