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

#include "fstkey/graph/context_fst.h"

namespace fstkey {

WeightedFst BuildContextFst(const KeyAlphabet& alphabet,
                            const ContextFstOptions& options) {
  const int k = alphabet.NumKeys();
  WeightedFst c;
  for (int s = 0; s <= k; ++s) {
    c.AddState();
    c.SetFinal(s, Weight::One());
  }
  c.SetStart(0);
  for (int a = -1; a < k; ++a) {
    const StateId s = a + 1;
    for (int b = 0; b < k; ++b) {
      c.AddArc(s, {alphabet.ContextLabel(a, b), alphabet.KeyLabel(b),
                   Weight::One(), b + 1});
    }
    if (options.space_resets) {
      c.AddArc(s, {alphabet.ContextSpaceLabel(), alphabet.SpaceLabel(),
                   Weight::One(), 0});
    }
    if (options.literal_passthrough) {
      for (int b = 0; b < k; ++b) {
        c.AddArc(s, {alphabet.ContextLiteralLabel(b), alphabet.LiteralKeyLabel(b),
                     Weight::One(), s});
      }
    }
  }
  c.SetInputSymbols(alphabet.context_symbols());
  c.SetOutputSymbols(alphabet.key_symbols());
  return c;
}

}  // namespace fstkey
