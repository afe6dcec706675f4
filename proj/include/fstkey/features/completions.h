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

#ifndef FSTKEY_FEATURES_COMPLETIONS_H_
#define FSTKEY_FEATURES_COMPLETIONS_H_

#include <span>
#include <vector>

#include "fstkey/features/scored.h"
#include "fstkey/graph/decoder_graph.h"

namespace fstkey {

// What completions need to know about one beam hypothesis.
struct CompletionSource {
  StateId cl_state = kNoState;
  StateId g_state = kNoState;
  double cost = 0.0;     // total
  double spatial = 0.0;  // cost minus the language model share
  // Output labels emitted in the current word.
  std::vector<Label> emitted;
};

// k best distinct lexicon words extending the hypotheses. A hypothesis
// inside the word trie offers every word still reachable from its lexicon
// state at spatial + LM(word | context); one that has already produced a
// single word offers it at its own cost.
std::vector<Scored> Completions(const DecoderGraph& graph,
                                std::span<const CompletionSource> sources, int k);

}  // namespace fstkey

#endif  // FSTKEY_FEATURES_COMPLETIONS_H_
