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

#include "fstkey/features/completions.h"

#include <algorithm>
#include <limits>
#include <map>

namespace fstkey {

std::vector<Scored> Completions(const DecoderGraph& graph,
                                std::span<const CompletionSource> sources, int k) {
  if (k <= 0) return {};
  std::vector<const CompletionSource*> order;
  for (const auto& s : sources) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    return a->spatial < b->spatial;
  });
  std::map<Label, double> best;
  // k-th best cost so far; a source whose spatial part alone exceeds it
  // cannot contribute since LM costs are non-negative.
  auto kth = [&] {
    if (best.size() < static_cast<size_t>(k)) return std::numeric_limits<double>::infinity();
    std::vector<double> c;
    for (const auto& [l, v] : best) c.push_back(v);
    std::nth_element(c.begin(), c.begin() + (k - 1), c.end());
    return c[k - 1];
  };
  auto offer = [&](Label l, double cost) {
    auto [it, inserted] = best.emplace(l, cost);
    if (!inserted) it->second = std::min(it->second, cost);
  };
  const WeightedFst& g = graph.g().fst;
  for (const CompletionSource* s : order) {
    if (s->spatial > kth()) break;
    if (!s->emitted.empty()) {
      if (s->emitted.size() == 1 && graph.OutputKindOf(s->emitted[0]) == OutputKind::kWord) {
        offer(s->emitted[0], s->cost);
      }
      continue;
    }
    if (graph.StateInfo(s->cl_state).track != LexTrack::kWord) continue;
    for (const auto& [lo, hi] : graph.Intervals(s->cl_state).Intervals()) {
      for (Label l = lo; l < hi; ++l) {
        if (graph.OutputKindOf(l) != OutputKind::kWord) continue;
        if (auto step = GWordStep(g, s->g_state, l)) offer(l, s->spatial + step->cost.Value());
      }
    }
  }
  std::vector<std::pair<double, Label>> ranked;
  for (const auto& [l, c] : best) ranked.emplace_back(c, l);
  std::sort(ranked.begin(), ranked.end());
  if (ranked.size() > static_cast<size_t>(k)) ranked.resize(k);
  std::vector<Scored> out;
  for (const auto& [c, l] : ranked) out.push_back({graph.WordText(l), c});
  return out;
}

}  // namespace fstkey
