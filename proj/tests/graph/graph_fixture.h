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

#ifndef FSTKEY_TESTS_GRAPH_GRAPH_FIXTURE_H_
#define FSTKEY_TESTS_GRAPH_GRAPH_FIXTURE_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fstkey/graph/decoder_graph.h"
#include "fstkey/text.h"

namespace fstkey::testing {

// One row of 40x60 keys plus a space bar below.
inline KeyboardLayout RowLayout(const std::vector<std::string>& codes) {
  std::vector<Key> keys;
  for (size_t i = 0; i < codes.size(); ++i) {
    const double l = 40.0 * i;
    keys.push_back({codes[i], codes[i], l + 20, 30, l, 0, 40, 60});
  }
  const double w = 40.0 * codes.size();
  keys.push_back({" ", "space", w / 2, 90, 0, 60, w, 60});
  return KeyboardLayout("row", keys);
}

inline std::vector<LexiconEntry> Entries(const std::vector<std::string>& words) {
  std::vector<LexiconEntry> out;
  for (const auto& w : words) out.push_back({w, {}});
  return out;
}

inline NGramModel ModelFor(const std::vector<std::vector<std::string>>& corpus,
                           const std::vector<std::string>& vocab, int order = 2) {
  return NGramModel::Train(corpus, order, vocab);
}

// Output sequences (epsilons dropped) of accepting paths of the lazy graph
// for an input label sequence, with their best cost.
inline void Search(LazyComposedGraph& g, StateId s, const std::vector<Label>& in,
                   size_t pos, std::vector<Label>& out, double cost, int eps_depth,
                   std::map<std::vector<Label>, double>& result) {
  if (pos == in.size() && g.Final(s).IsFinite()) {
    const double c = cost + g.Final(s).Value();
    auto [it, inserted] = result.emplace(out, c);
    if (!inserted) it->second = std::min(it->second, c);
  }
  if (eps_depth > 8) return;
  const std::vector<ComposedArc> arcs = g.Expand(s);
  for (const ComposedArc& a : arcs) {
    const bool eps = a.ilabel == kEpsilon;
    if (!eps && (pos == in.size() || a.ilabel != in[pos])) continue;
    if (a.olabel) out.push_back(a.olabel);
    Search(g, a.nextstate, in, pos + (eps ? 0 : 1), out, cost + a.weight.Value(),
           eps ? eps_depth + 1 : 0, result);
    if (a.olabel) out.pop_back();
  }
}

inline std::map<std::vector<Label>, double> Outputs(const DecoderGraph& g,
                                                    const std::vector<Label>& in) {
  std::map<std::vector<Label>, double> result;
  std::vector<Label> out;
  Search(g.lazy(), g.lazy().Start(), in, 0, out, 0, 0, result);
  return result;
}

// Context labels for typing a word's keys from the word-initial context.
inline std::vector<Label> TypeKeys(const KeyAlphabet& a,
                                   const std::vector<std::string>& keys) {
  std::vector<Label> out;
  int prev = -1;
  for (const auto& k : keys) {
    const int i = a.IndexOf(k);
    out.push_back(a.ContextLabel(prev, i));
    prev = i;
  }
  return out;
}

inline std::vector<Label> TypeWord(const KeyAlphabet& a, const std::string& w) {
  return TypeKeys(a, SplitUtf8(AsciiLower(w)));
}

}  // namespace fstkey::testing

#endif  // FSTKEY_TESTS_GRAPH_GRAPH_FIXTURE_H_
