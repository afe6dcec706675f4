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

#ifndef FSTKEY_HARNESS_SYNTH_H_
#define FSTKEY_HARNESS_SYNTH_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fstkey/spatial/layout.h"
#include "fstkey/spatial/touch.h"
#include "json.hpp"

namespace fstkey {

// Tap noise. spread scales the key size into the tap Gaussian's sigma.
struct NoiseParams {
  double spread = 0.25;
  double deletion_rate = 0.01;
  double insertion_rate = 0.01;
  uint64_t seed = 42;
};

nlohmann::json ToJson(const NoiseParams& p);
void MergeJson(const nlohmann::json& j, NoiseParams& p);

struct GestureParams {
  double speed = 0.72;        // px per ms
  double dwell_ms = 150.0;    // pause at each letter key
  double jitter = 4.0;        // sigma of waypoint offsets, px
  double sample_ms = 10.0;
  uint64_t seed = 42;
};

nlohmann::json ToJson(const GestureParams& p);
void MergeJson(const nlohmann::json& j, GestureParams& p);

// Taps for the words with one exact tap on the space key between words.
// Taps are tap_ms apart starting after t0. Throws InputError naming every
// character the layout cannot type.
std::vector<TouchPoint> SynthesizeTaps(const std::vector<std::string>& words,
                                       const KeyboardLayout& layout, const NoiseParams& noise,
                                       std::mt19937_64& rng, double t0 = 0,
                                       double tap_ms = 180);
std::vector<TouchPoint> SynthesizeTaps(const std::vector<std::string>& words,
                                       const KeyboardLayout& layout, const NoiseParams& noise);

// One down..up stroke through the word's key centers.
std::vector<TouchPoint> SynthesizeGesture(const std::string& word, const KeyboardLayout& layout,
                                          const GestureParams& params, std::mt19937_64& rng,
                                          double t0 = 0);
std::vector<TouchPoint> SynthesizeGesture(const std::string& word, const KeyboardLayout& layout,
                                          const GestureParams& params);

// Text given by the keys under the taps; taps on the space key give ' '.
std::string TapLiteral(const KeyboardLayout& layout, const std::vector<TouchPoint>& taps);
// Keys under the trajectory with repeats collapsed.
std::string GestureLiteral(const KeyboardLayout& layout, const std::vector<TouchPoint>& points);

// Key indices typing word, lower-cased. Throws InputError as above.
std::vector<int> KeysOf(const KeyboardLayout& layout, const std::string& word);

}  // namespace fstkey

#endif  // FSTKEY_HARNESS_SYNTH_H_
