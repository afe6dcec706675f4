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

#ifndef FSTKEY_SPATIAL_LIKELIHOOD_H_
#define FSTKEY_SPATIAL_LIKELIHOOD_H_

#include <optional>
#include <string>
#include <vector>

#include "fstkey/fst/weight.h"
#include "fstkey/spatial/layout.h"
#include "fstkey/spatial/touch.h"
#include "json.hpp"

namespace fstkey {

struct SpatialParams {
  // Per-axis standard deviation as a fraction of the key's width / height.
  double sigma_x_scale = 0.5;
  double sigma_y_scale = 0.5;
  int top_k = 6;
  // Gesture resampling.
  double period_ms = 100.0;
  // Half width of the central difference used for speed.
  double speed_half_window_ms = 25.0;
  // Speed at which the alignment factor reaches zero, px/ms.
  double speed_max = 0.5;
  // Cost scale of the alignment factor, nats.
  double dwell_weight = 1.0;
  // Fixed cost of a transit frame (one that emits no key).
  double transit_base = 0.5;
};

nlohmann::json ToJson(const SpatialParams& p);
// Throws ConfigError on unknown keys or wrong types.
void MergeJson(const nlohmann::json& j, SpatialParams& p);

struct Frame {
  TouchPoint point;
  // Indexed by key; Zero for keys outside the top K and for the separator.
  std::vector<Weight> scores;
  std::optional<int> literal_key;
  double speed = 0.0;
  // 1 at rest, 0 at or above speed_max. Always 1 for taps.
  double align = 1.0;
  bool gesture = false;

  // Best-scoring key (lowest index on ties).
  int BestKey() const;
};

// Unnormalized -log density of the key's Gaussian at (x, y).
double KeyCost(const Key& key, double x, double y, const SpatialParams& p);

// Throws ConfigError for a layout without letter keys.
Frame TapLikelihood(const KeyboardLayout& layout, const TouchPoint& p,
                    const SpatialParams& params);

// Throws InputError for fewer than two points or time going backwards.
std::vector<Frame> GestureFrames(const KeyboardLayout& layout,
                                 const std::vector<TouchPoint>& trajectory,
                                 const SpatialParams& params);

// Cost of aligning a gesture frame with key k: spatial plus the penalty for
// moving while doing so.
Weight AlignedCost(const Frame& f, int k, const SpatialParams& params);
// Cost of a frame that emits nothing.
Weight TransitCost(const Frame& f, const SpatialParams& params);

// Key under each tap (nearest key when outside every box).
std::string LiteralString(const KeyboardLayout& layout,
                          const std::vector<Frame>& frames);
// Key a tap frame types literally: its box key unless that is the
// separator, otherwise the nearest letter key.
int LiteralKeyOrNearest(const KeyboardLayout& layout, const Frame& f);

}  // namespace fstkey

#endif  // FSTKEY_SPATIAL_LIKELIHOOD_H_
