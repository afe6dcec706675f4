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

#ifndef FSTKEY_GRAPH_CONTEXT_FST_H_
#define FSTKEY_GRAPH_CONTEXT_FST_H_

#include "fstkey/fst/fst.h"
#include "fstkey/graph/alphabet.h"

namespace fstkey {

struct ContextFstOptions {
  // <space> returns to the word-initial context.
  bool space_resets = true;
  // Literal-key symbols pass through unchanged as self-loops.
  bool literal_passthrough = true;
};

// Bi-key context transducer: state 0 is the word-initial context, state i+1
// means key i came last. Arcs a_b:b go from state(a) to state(b). Every
// state is final.
WeightedFst BuildContextFst(const KeyAlphabet& alphabet,
                            const ContextFstOptions& options = {});

}  // namespace fstkey

#endif  // FSTKEY_GRAPH_CONTEXT_FST_H_
