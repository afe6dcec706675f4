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

#include "fstkey/harness/resources.h"

#include <set>

namespace fstkey {

NGramModel TrainModel(const std::vector<std::vector<std::string>>& corpus,
                      const WordList& words, int order, double prior_weight, double discount) {
  std::vector<std::string> vocab;
  std::vector<double> prior;
  std::set<std::string> seen;
  double listed = 0;
  for (const auto& [w, c] : words) {
    if (!seen.insert(w).second) continue;
    vocab.push_back(w);
    prior.push_back(c);
    listed += c;
  }
  double tokens = 0;
  for (const auto& s : corpus) {
    tokens += s.size() + 1;
    for (const std::string& w : s) {
      if (seen.insert(w).second) {
        vocab.push_back(w);
        prior.push_back(0);
      }
    }
  }
  if (listed > 0 && prior_weight > 0) {
    for (double& p : prior) p *= prior_weight * tokens / listed;
  } else {
    prior.clear();
  }
  return NGramModel::Train(corpus, order, vocab, discount, prior);
}

WordList TopWords(const WordList& words, int max_words) {
  if (max_words <= 0 || static_cast<size_t>(max_words) >= words.size()) return words;
  return WordList(words.begin(), words.begin() + max_words);
}

std::vector<LexiconEntry> LexiconFor(const WordList& words) {
  std::vector<LexiconEntry> out;
  std::set<std::string> seen;
  for (const auto& [w, c] : words) {
    if (seen.insert(w).second) out.push_back({w, {}});
  }
  return out;
}

}  // namespace fstkey
