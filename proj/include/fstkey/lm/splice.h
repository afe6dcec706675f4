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

#ifndef FSTKEY_LM_SPLICE_H_
#define FSTKEY_LM_SPLICE_H_

#include <vector>

#include "fstkey/lm/char_lm.h"
#include "fstkey/lm/ngram_fst.h"

namespace fstkey {

struct LiteralGrammarParams {
  double entry_cost = 3.5;
  double marker_cost = 0.0;
};

// Adds a subgraph at the unigram state accepting runs of literal symbols,
// weighted by the character model, and closed by the marker symbol, which
// returns to the unigram state. literal_labels[i] is the label for the
// character model's alphabet entry i. A run c1..cn costs
// entry_cost + marker_cost + char_lm.Score(c1..cn) (end marker included).
void SpliceLiteralGrammar(NGramFst& g, const CharLM& char_lm,
                          const std::vector<Label>& literal_labels,
                          Label marker, const LiteralGrammarParams& params = {});

struct CharWordEntry {
  std::vector<Label> chars;  // character-word labels
  Label word = kNoLabel;     // output word
  Weight cost;               // charged on the closing arc
};

// Adds a character trie at the unigram state; each entry's path reads its
// chars then end_label, emits the word on the last arc and returns to the
// unigram state. Entries with an already present path keep the first.
void SpliceCharToWord(NGramFst& g, const std::vector<CharWordEntry>& entries,
                      Label end_label);

}  // namespace fstkey

#endif  // FSTKEY_LM_SPLICE_H_
