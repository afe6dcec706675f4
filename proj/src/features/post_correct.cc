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

#include "fstkey/features/post_correct.h"

#include "fstkey/errors.h"
#include "fstkey/json_util.h"

namespace fstkey {

nlohmann::json ToJson(const PostCorrectParams& p) {
  return {{"enabled", p.enabled},
          {"min_gain", p.min_gain},
          {"window_words", p.window_words},
          {"window_ms", p.window_ms}};
}

void MergeJson(const nlohmann::json& j, PostCorrectParams& p) {
  JsonFields(j, "post_correction")
      .Get("enabled", p.enabled)
      .Get("min_gain", p.min_gain)
      .Get("window_words", p.window_words)
      .Get("window_ms", p.window_ms)
      .RejectUnknown();
  if (p.min_gain < 0 || p.window_words < 0 || p.window_ms < 0) {
    throw ConfigError("post_correction: values must be >= 0");
  }
}

std::optional<std::pair<double, StateId>> LabelsCost(const WeightedFst& g, StateId s,
                                                     std::span<const Label> labels) {
  double cost = 0.0;
  for (Label l : labels) {
    const auto step = GWordStep(g, s, l);
    if (!step) return std::nullopt;
    cost += step->cost.Value();
    s = step->next;
  }
  return std::make_pair(cost, s);
}

std::optional<Revision> BestRevision(const DecoderGraph& graph, StateId g_before,
                                     const LatticeEntry& committed,
                                     std::span<const LatticeEntry> lattice,
                                     std::span<const Label> next_labels,
                                     int age_words, double age_ms,
                                     const PostCorrectParams& params) {
  if (!params.enabled || age_words > params.window_words || age_ms > params.window_ms) {
    return std::nullopt;
  }
  const WeightedFst& g = graph.g().fst;
  const auto old_next = LabelsCost(g, committed.g_after, next_labels);
  if (!old_next) return std::nullopt;
  const double old_joint = committed.spatial + committed.lm + old_next->first;
  std::optional<Revision> best;
  double best_joint = old_joint - params.min_gain;
  for (size_t i = 0; i < lattice.size(); ++i) {
    const LatticeEntry& c = lattice[i];
    if (c.text == committed.text || c.labels.size() != 1 ||
        graph.OutputKindOf(c.labels[0]) != OutputKind::kWord) {
      continue;
    }
    const auto word = LabelsCost(g, g_before, c.labels);
    if (!word) continue;
    const auto next = LabelsCost(g, word->second, next_labels);
    if (!next) continue;
    const double joint = c.spatial + word->first + next->first;
    if (joint < best_joint) {
      best_joint = joint;
      best = Revision{i, old_joint - joint};
    }
  }
  return best;
}

}  // namespace fstkey
