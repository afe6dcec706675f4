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

#ifndef FSTKEY_FST_WEIGHT_H_
#define FSTKEY_FST_WEIGHT_H_

#include <cmath>
#include <limits>
#include <ostream>

namespace fstkey {

// Tropical semiring weight: a cost in nats, Plus = min, Times = +.
class Weight {
 public:
  constexpr Weight() : value_(0.0) {}
  constexpr explicit Weight(double value) : value_(value) {}

  static constexpr Weight Zero() {
    return Weight(std::numeric_limits<double>::infinity());
  }
  static constexpr Weight One() { return Weight(0.0); }

  constexpr double Value() const { return value_; }
  bool IsZero() const { return std::isinf(value_) && value_ > 0; }
  bool IsFinite() const { return std::isfinite(value_); }

  friend constexpr Weight Plus(Weight a, Weight b) {
    return a.value_ <= b.value_ ? a : b;
  }
  friend constexpr Weight Times(Weight a, Weight b) {
    return Weight(a.value_ + b.value_);
  }

  friend constexpr bool operator==(Weight a, Weight b) {
    return a.value_ == b.value_;
  }
  friend constexpr bool operator<(Weight a, Weight b) {
    return a.value_ < b.value_;
  }

 private:
  double value_;
};

inline std::ostream& operator<<(std::ostream& os, Weight w) {
  if (w.IsZero()) return os << "Infinity";
  return os << w.Value();
}

}  // namespace fstkey

#endif  // FSTKEY_FST_WEIGHT_H_
