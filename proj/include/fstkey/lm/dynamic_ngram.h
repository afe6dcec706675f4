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

#ifndef FSTKEY_LM_DYNAMIC_NGRAM_H_
#define FSTKEY_LM_DYNAMIC_NGRAM_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "fstkey/fst/weight.h"

namespace fstkey {

// User history model: decayable unigram and bigram counts over any words.
// Observe and Score may be called from different threads.
class DynamicNGram {
 public:
  struct Count {
    double count = 0;
    double timestamp = 0;
  };

  explicit DynamicNGram(double beta = 1.0) : beta_(beta) {}
  DynamicNGram(const DynamicNGram& other);
  DynamicNGram& operator=(const DynamicNGram& other);

  // Counts each word and each adjacent pair. previous, when given, is the
  // word committed just before words[0].
  void Observe(const std::vector<std::string>& words, double timestamp,
               const std::optional<std::string>& previous = std::nullopt);
  // Multiplies every count by factor in [0, 1].
  void Decay(double factor);

  // -ln of (c(context, word) + beta p(word)) / (c(context, *) + beta), where
  // p is the unigram relative frequency. Empty context scores p(word).
  // Absent for words never observed.
  std::optional<Weight> Score(const std::string& word,
                              const std::optional<std::string>& context) const;
  // -ln p(word); absent when unseen.
  std::optional<Weight> UnigramScore(const std::string& word) const;

  double UnigramCount(const std::string& word) const;
  double BigramCount(const std::string& context, const std::string& word) const;
  double TotalCount() const;
  // Words observed so far, sorted.
  std::vector<std::string> Vocabulary() const;

  // JSON lines: {"ngram": [...], "count": c, "t": timestamp}.
  void Save(std::ostream& out) const;
  static DynamicNGram Load(std::istream& in, double beta = 1.0);

 private:
  double ScoreLocked(const std::string& word,
                     const std::optional<std::string>& context) const;

  double beta_;
  mutable std::shared_mutex mu_;
  std::map<std::string, Count> unigrams_;
  std::map<std::pair<std::string, std::string>, Count> bigrams_;
  std::map<std::string, double> context_totals_;
  double total_ = 0;
};

}  // namespace fstkey

#endif  // FSTKEY_LM_DYNAMIC_NGRAM_H_
