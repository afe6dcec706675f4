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

#ifndef FSTKEY_FEATURES_POST_CORRECT_H_
#define FSTKEY_FEATURES_POST_CORRECT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fstkey/graph/decoder_graph.h"
#include "json.hpp"

namespace fstkey {

struct PostCorrectParams {
  bool enabled = true;
  double min_gain = 2.0;  // gamma, nats
  int window_words = 1;
  double window_ms = 10000.0;
};

nlohmann::json ToJson(const PostCorrectParams& p);
void MergeJson(const nlohmann::json& j, PostCorrectParams& p);

// One interpretation of a committed word.
struct LatticeEntry {
  std::string text;
  std::vector<Label> labels;
  double spatial = 0.0;
  double lm = 0.0;
  StateId g_after = kNoState;
};

struct PostCorrection {
  int position = 0;  // index in the committed history
  std::string old_text;
  std::string new_text;
  double gain = 0.0;
};

// Cost of a label sequence read from G state s with backoff, and the state
// reached. Absent when some label has no arc.
std::optional<std::pair<double, StateId>> LabelsCost(const WeightedFst& g, StateId s,
                                                     std::span<const Label> labels);

struct Revision {
  size_t index = 0;  // into the lattice
  double gain = 0.0;
};

// Rescores the previous word's lattice jointly with the word that followed
// it. Only single lexicon words are considered as replacements. Returns the
// best replacement when it beats the committed interpretation by more than
// min_gain; age_words counts commits since the previous word (1 for the
// word just before) and age_ms the time between them.
std::optional<Revision> BestRevision(const DecoderGraph& graph, StateId g_before,
                                     const LatticeEntry& committed,
                                     std::span<const LatticeEntry> lattice,
                                     std::span<const Label> next_labels,
                                     int age_words, double age_ms,
                                     const PostCorrectParams& params);

}  // namespace fstkey

#endif  // FSTKEY_FEATURES_POST_CORRECT_H_
