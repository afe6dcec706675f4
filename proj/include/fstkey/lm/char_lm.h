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

#ifndef FSTKEY_LM_CHAR_LM_H_
#define FSTKEY_LM_CHAR_LM_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fstkey {

struct CharLMParams {
  // Interpolation weights for trigram, bigram, unigram and uniform.
  double lambda3 = 0.6;
  double lambda2 = 0.25;
  double lambda1 = 0.1;
  double lambda0 = 0.05;
  // Cost of a character outside the alphabet.
  double unknown_cost = 9.210340371976184;  // -ln 1e-4
};

// Order-3 character model over key codes with begin and end markers.
// Weights of orders whose context was never seen move to the others.
class CharLM {
 public:
  using Id = int;

  CharLM() = default;
  // words: (text, weight) pairs; characters outside the alphabet are
  // skipped along with the contexts they would create.
  static CharLM Train(const std::vector<std::string>& alphabet,
                      const std::vector<std::pair<std::string, double>>& words,
                      const CharLMParams& params = {});

  int AlphabetSize() const { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Id End() const { return AlphabetSize(); }
  Id Begin() const { return AlphabetSize() + 1; }
  // Outside-alphabet marker; also used for "no character" in a context.
  Id Unknown() const { return AlphabetSize() + 2; }
  Id IdOf(std::string_view c) const;

  // -ln p(c | a b). a is Unknown() when only one character of context
  // exists (the first character has context (Unknown, Begin)).
  double Cost(Id a, Id b, Id c) const;
  // -ln p(text $ | ^); throws InputError on empty text.
  double Score(std::string_view text) const;

  void Write(std::ostream& os) const;
  static CharLM Read(std::istream& is);

 private:
  int Ctx() const { return AlphabetSize() + 3; }
  int Out() const { return AlphabetSize() + 1; }

  std::vector<std::string> alphabet_;
  CharLMParams params_;
  std::vector<double> uni_;       // [Out]
  std::vector<double> bi_;        // [Ctx * Out]
  std::vector<double> tri_;       // [Ctx * Ctx * Out]
  double uni_total_ = 0;
  std::vector<double> bi_total_;  // [Ctx]
  std::vector<double> tri_total_; // [Ctx * Ctx]
};

}  // namespace fstkey

#endif  // FSTKEY_LM_CHAR_LM_H_
