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

#ifndef FSTKEY_LM_NGRAM_FST_H_
#define FSTKEY_LM_NGRAM_FST_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fstkey/fst/fst.h"
#include "fstkey/lm/ngram_model.h"

namespace fstkey {

enum class GStateKind : uint8_t { kWord, kLiteral, kCharWord };

// Backoff machine view of an n-gram model. Each context has a state; the
// epsilon arc of a state is its backoff (failure) transition and is taken
// only for labels the state lacks. Under that reading a sentence's path cost
// is exactly -ln of its model probability. Arcs are ilabel-sorted.
struct NGramFst {
  WeightedFst fst;
  StateId unigram = kNoState;
  // One per state. Splices add non-word states.
  std::vector<GStateKind> kinds;

  bool IsWordState(StateId s) const { return kinds[s] == GStateKind::kWord; }
  void Write(std::ostream& os) const;
  static NGramFst Read(std::istream& is);
};

// Arc labels are the ids `words` gives the model's words; words absent from
// it are dropped, and <s>, </s>, <unk> never label an arc (</s> becomes the
// final weight).
NGramFst NGramToFst(const NGramModel& model, const SymbolTable& words);

struct GStep {
  Weight cost;  // backoff weights paid plus the arc weight
  StateId next = kNoState;
  Label olabel = kNoLabel;
};

// First arc for label along the backoff chain of s.
std::optional<GStep> GWordStep(const WeightedFst& g, StateId s, Label label);
// Final weight along the backoff chain.
Weight GFinal(const WeightedFst& g, StateId s);
// Cost of the label sequence from the start plus the final weight.
Weight GSentenceCost(const WeightedFst& g, std::span<const Label> labels);

// Replaces every backoff arc by explicit copies of the backoff target's
// arcs for labels the state lacks, giving an epsilon-free machine whose
// ordinary paths are exactly the backoff paths. Exponential in the worst
// case; meant for small test models.
WeightedFst PhiExpand(const WeightedFst& g);

}  // namespace fstkey

#endif  // FSTKEY_LM_NGRAM_FST_H_
