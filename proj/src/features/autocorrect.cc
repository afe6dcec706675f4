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

#include "fstkey/features/autocorrect.h"

#include <algorithm>

#include "fstkey/errors.h"
#include "fstkey/json_util.h"

namespace fstkey {

nlohmann::json ToJson(const AutocorrectParams& p) {
  return {{"margin", p.margin},
          {"valid_word_penalty", p.valid_word_penalty},
          {"literal_scale", p.literal_scale}};
}

void MergeJson(const nlohmann::json& j, AutocorrectParams& p) {
  JsonFields(j, "autocorrect")
      .Get("margin", p.margin)
      .Get("valid_word_penalty", p.valid_word_penalty)
      .Get("literal_scale", p.literal_scale)
      .RejectUnknown();
  if (p.margin < 0 || p.valid_word_penalty < 0) {
    throw ConfigError("autocorrect: margin and valid_word_penalty must be >= 0");
  }
}

AutocorrectResult DecideAutocorrect(std::span<const Scored> candidates,
                                    const Scored& literal, bool literal_is_word,
                                    const AutocorrectParams& params) {
  AutocorrectResult r{literal.text, false, 0.0};
  if (candidates.empty()) return r;
  double literal_cost = literal.cost;
  if (literal_is_word) {
    for (const Scored& c : candidates) {
      if (c.text == literal.text) literal_cost = std::min(literal_cost, c.cost);
    }
  }
  const Scored& top = candidates.front();
  r.gain = literal_cost - top.cost;
  if (top.text == literal.text) return r;
  const double threshold =
      params.margin + (literal_is_word ? params.valid_word_penalty : 0.0);
  if (r.gain > threshold) {
    r.text = top.text;
    r.corrected = true;
  }
  return r;
}

}  // namespace fstkey
