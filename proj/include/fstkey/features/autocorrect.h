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

#ifndef FSTKEY_FEATURES_AUTOCORRECT_H_
#define FSTKEY_FEATURES_AUTOCORRECT_H_

#include <span>
#include <string>

#include "fstkey/features/scored.h"
#include "json.hpp"

namespace fstkey {

struct AutocorrectParams {
  double margin = 0.5;              // tau
  double valid_word_penalty = 1.5;  // rho
  // Weight of the character model in the literal's cost.
  double literal_scale = 1.0;
};

nlohmann::json ToJson(const AutocorrectParams& p);
void MergeJson(const nlohmann::json& j, AutocorrectParams& p);

struct AutocorrectResult {
  std::string text;
  bool corrected = false;
  // literal cost minus top candidate cost.
  double gain = 0.0;
};

// candidates must be cost-ascending. When the literal is a vocabulary word
// its cost is the lower of literal.cost and its own candidate's cost.
AutocorrectResult DecideAutocorrect(std::span<const Scored> candidates,
                                    const Scored& literal, bool literal_is_word,
                                    const AutocorrectParams& params);

}  // namespace fstkey

#endif  // FSTKEY_FEATURES_AUTOCORRECT_H_
