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

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "fstkey/errors.h"
#include "fstkey/fst/algorithms.h"

namespace fstkey {
namespace {

struct TupleHash {
  size_t operator()(const ComposeTuple& t) const {
    uint64_t h = static_cast<uint32_t>(t.left);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<uint32_t>(t.right);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<uint32_t>(t.filter);
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

bool CompareIlabel(const Arc& x, const Arc& y) { return x.ilabel < y.ilabel; }

}  // namespace

WeightedFst Compose(const WeightedFst& a, const WeightedFst& b,
                    const ComposeOptions& options) {
  if (a.OutputSymbols() && b.InputSymbols() &&
      !(*a.OutputSymbols() == *b.InputSymbols())) {
    throw ConfigError(
        "compose: left output alphabet differs from right input alphabet");
  }
  WeightedFst result;
  result.SetInputSymbols(a.InputSymbols());
  result.SetOutputSymbols(b.OutputSymbols());
  if (a.Start() == kNoState || b.Start() == kNoState) return result;

  // Right arcs sorted on the shared tape.
  const WeightedFst* right = &b;
  WeightedFst sorted_copy;
  if (!b.HasProperty(kILabelSorted)) {
    sorted_copy = ArcSort(b, Tape::kInput);
    right = &sorted_copy;
  }

  std::unordered_map<ComposeTuple, StateId, TupleHash> ids;
  std::vector<ComposeTuple> tuples;
  std::deque<StateId> queue;
  auto find_or_add = [&](const ComposeTuple& t) {
    auto [it, inserted] = ids.try_emplace(t, kNoState);
    if (inserted) {
      it->second = result.AddState();
      tuples.push_back(t);
      queue.push_back(it->second);
    }
    return it->second;
  };

  result.SetStart(find_or_add({a.Start(), b.Start(), 0}));
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    const ComposeTuple t = tuples[s];
    const auto right_arcs = right->Arcs(t.right);
    const auto eps_end = std::upper_bound(right_arcs.begin(), right_arcs.end(),
                                          Arc{}, CompareIlabel);

    for (const Arc& la : a.Arcs(t.left)) {
      if (la.olabel == kEpsilon) {
        // Left moves alone.
        if (t.filter != 1) {
          const StateId n = find_or_add({la.nextstate, t.right, 2});
          result.AddArc(s, {la.ilabel, kEpsilon, la.weight, n});
        }
        // Both sides take an epsilon together.
        if (t.filter == 0) {
          for (auto it = right_arcs.begin(); it != eps_end; ++it) {
            const StateId n = find_or_add({la.nextstate, it->nextstate, 0});
            result.AddArc(s, {la.ilabel, it->olabel,
                              Times(la.weight, it->weight), n});
          }
        }
        continue;
      }
      Arc key;
      key.ilabel = la.olabel;
      auto [lo, hi] = std::equal_range(right_arcs.begin(), right_arcs.end(),
                                       key, CompareIlabel);
      for (auto it = lo; it != hi; ++it) {
        const StateId n = find_or_add({la.nextstate, it->nextstate, 0});
        result.AddArc(s, {la.ilabel, it->olabel, Times(la.weight, it->weight),
                          n});
      }
    }
    // Right moves alone.
    if (t.filter != 2) {
      for (auto it = right_arcs.begin(); it != eps_end; ++it) {
        const StateId n = find_or_add({t.left, it->nextstate, 1});
        result.AddArc(s, {kEpsilon, it->olabel, it->weight, n});
      }
    }
    result.SetFinal(s, Times(a.Final(t.left), right->Final(t.right)));
  }
  if (options.provenance) *options.provenance = std::move(tuples);
  return result;
}

}  // namespace fstkey
