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

#include "fstkey/fst/label_interval_set.h"

#include <algorithm>

namespace fstkey {

void LabelIntervalSet::InsertInterval(Label begin, Label end) {
  if (begin >= end) return;
  // First interval whose end reaches begin (adjacent ones merge too).
  auto lo = std::lower_bound(
      intervals_.begin(), intervals_.end(), begin,
      [](const Interval& iv, Label b) { return iv.second < b; });
  auto hi = lo;
  while (hi != intervals_.end() && hi->first <= end) {
    begin = std::min(begin, hi->first);
    end = std::max(end, hi->second);
    ++hi;
  }
  lo = intervals_.erase(lo, hi);
  intervals_.insert(lo, {begin, end});
}

void LabelIntervalSet::Union(const LabelIntervalSet& other) {
  if (other.intervals_.empty()) return;
  if (intervals_.empty()) {
    intervals_ = other.intervals_;
    return;
  }
  std::vector<Interval> merged;
  merged.reserve(intervals_.size() + other.intervals_.size());
  std::merge(intervals_.begin(), intervals_.end(), other.intervals_.begin(),
             other.intervals_.end(), std::back_inserter(merged));
  intervals_.clear();
  for (const auto& iv : merged) {
    if (!intervals_.empty() && iv.first <= intervals_.back().second) {
      intervals_.back().second = std::max(intervals_.back().second, iv.second);
    } else {
      intervals_.push_back(iv);
    }
  }
}

bool LabelIntervalSet::Contains(Label label) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), label,
      [](Label l, const Interval& iv) { return l < iv.second; });
  return it != intervals_.end() && it->first <= label;
}

bool LabelIntervalSet::IntersectsRange(Label begin, Label end) const {
  if (begin >= end) return false;
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), begin,
      [](Label l, const Interval& iv) { return l < iv.second; });
  return it != intervals_.end() && it->first < end;
}

size_t LabelIntervalSet::Count() const {
  size_t n = 0;
  for (const auto& iv : intervals_) n += iv.second - iv.first;
  return n;
}

std::vector<Label> LabelIntervalSet::Labels() const {
  std::vector<Label> out;
  for (const auto& iv : intervals_) {
    for (Label l = iv.first; l < iv.second; ++l) out.push_back(l);
  }
  return out;
}

}  // namespace fstkey
