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

#include "fstkey/lm/splice.h"

#include <map>

#include "fstkey/errors.h"
#include "fstkey/fst/algorithms.h"

namespace fstkey {

void SpliceLiteralGrammar(NGramFst& g, const CharLM& char_lm,
                          const std::vector<Label>& literal_labels,
                          Label marker, const LiteralGrammarParams& params) {
  const int k = char_lm.AlphabetSize();
  if (static_cast<int>(literal_labels.size()) != k) {
    throw ConfigError("one literal label per character is required");
  }
  // ctx(a, b): a in {begin} + alphabet (begin is row k), b in alphabet.
  const StateId base = g.fst.NumStates();
  for (int i = 0; i < (k + 1) * k; ++i) {
    g.fst.AddState();
    g.kinds.push_back(GStateKind::kLiteral);
  }
  auto ctx = [&](int a, int b) { return base + a * k + b; };
  const CharLM::Id begin = char_lm.Begin();
  for (int x = 0; x < k; ++x) {
    const Weight w(params.entry_cost + char_lm.Cost(char_lm.Unknown(), begin, x));
    g.fst.AddArc(g.unigram, {literal_labels[x], literal_labels[x], w, ctx(k, x)});
  }
  for (int a = 0; a <= k; ++a) {
    const CharLM::Id a_id = a == k ? begin : a;
    for (int b = 0; b < k; ++b) {
      const StateId s = ctx(a, b);
      for (int c = 0; c < k; ++c) {
        g.fst.AddArc(s, {literal_labels[c], literal_labels[c],
                         Weight(char_lm.Cost(a_id, b, c)), ctx(b, c)});
      }
      g.fst.AddArc(s, {marker, marker,
                       Weight(params.marker_cost +
                              char_lm.Cost(a_id, b, char_lm.End())),
                       g.unigram});
    }
  }
  g.fst = ArcSort(g.fst, Tape::kInput);
}

void SpliceCharToWord(NGramFst& g, const std::vector<CharWordEntry>& entries,
                      Label end_label) {
  if (entries.empty()) return;
  std::map<std::pair<StateId, Label>, StateId> child;
  std::map<StateId, bool> closed;
  for (const CharWordEntry& e : entries) {
    if (e.chars.empty()) continue;
    StateId s = g.unigram;
    for (Label c : e.chars) {
      auto [it, inserted] = child.try_emplace({s, c}, kNoState);
      if (inserted) {
        it->second = g.fst.AddState();
        g.kinds.push_back(GStateKind::kCharWord);
        g.fst.AddArc(s, {c, c, Weight::One(), it->second});
      }
      s = it->second;
    }
    if (closed[s]) continue;
    closed[s] = true;
    g.fst.AddArc(s, {end_label, e.word, e.cost, g.unigram});
  }
  g.fst = ArcSort(g.fst, Tape::kInput);
}

}  // namespace fstkey
