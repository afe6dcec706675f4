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

#ifndef FSTKEY_LM_NGRAM_MODEL_H_
#define FSTKEY_LM_NGRAM_MODEL_H_

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fstkey/fst/symbol_table.h"

namespace fstkey {

inline constexpr char kBos[] = "<s>";
inline constexpr char kEos[] = "</s>";
inline constexpr char kUnk[] = "<unk>";

// Backoff n-gram model with log10 probabilities, as in ARPA files.
class NGramModel {
 public:
  struct Entry {
    double log10_prob = 0.0;
    double log10_backoff = 0.0;
  };
  using NGram = std::vector<Label>;

  NGramModel() = default;

  // Absolute discounting with backoff. Tokens outside the vocabulary become
  // <unk>. Throws InputError for an empty corpus and ConfigError for an empty
  // vocabulary or a bad order. unigram_prior, when not empty, holds one
  // background count per vocabulary word added to the unigram counts.
  static NGramModel Train(const std::vector<std::vector<std::string>>& sentences,
                          int order, const std::vector<std::string>& vocabulary,
                          double discount = 0.5,
                          std::span<const double> unigram_prior = {});

  // Throws ParseError with the offending line.
  static NGramModel ReadArpa(std::istream& in);
  void WriteArpa(std::ostream& out) const;

  int order() const { return order_; }
  const SymbolTable& vocab() const { return vocab_; }
  Label bos() const { return bos_; }
  Label eos() const { return eos_; }
  Label unk() const { return unk_; }

  // n-grams of length n (1..order), sorted by label sequence.
  const std::map<NGram, Entry>& ngrams(int n) const { return ngrams_[n - 1]; }
  const Entry* Find(std::span<const Label> ngram) const;

  // log10 p(word | context) by backoff; only the last order-1 context words
  // are used. Words without a unigram get log10 0 = -inf.
  double Log10Prob(std::span<const Label> context, Label word) const;
  // -ln p(word | context).
  double Cost(std::span<const Label> context, Label word) const;
  // -ln p(words </s> | <s>).
  double SentenceCost(std::span<const Label> words) const;

  // Checks that every n-gram's context is present and that no context
  // distributes more than its mass. Throws ConfigError.
  void Validate() const;

 private:
  int order_ = 0;
  SymbolTable vocab_;
  Label bos_ = kNoLabel, eos_ = kNoLabel, unk_ = kNoLabel;
  std::vector<std::map<NGram, Entry>> ngrams_;
};

}  // namespace fstkey

#endif  // FSTKEY_LM_NGRAM_MODEL_H_
