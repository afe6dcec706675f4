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

#ifndef FSTKEY_FEATURES_SCORED_H_
#define FSTKEY_FEATURES_SCORED_H_

#include <string>

namespace fstkey {

// A text with its cost in nats.
struct Scored {
  std::string text;
  double cost = 0.0;

  bool operator==(const Scored&) const = default;
};

}  // namespace fstkey

#endif  // FSTKEY_FEATURES_SCORED_H_
