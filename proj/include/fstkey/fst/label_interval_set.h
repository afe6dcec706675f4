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

#ifndef FSTKEY_FST_LABEL_INTERVAL_SET_H_
#define FSTKEY_FST_LABEL_INTERVAL_SET_H_

#include <utility>
#include <vector>

#include "fstkey/fst/symbol_table.h"

namespace fstkey {

// Sorted, disjoint, maximally merged half-open label intervals [begin, end).
class LabelIntervalSet {
 public:
  using Interval = std::pair<Label, Label>;

  LabelIntervalSet() = default;

  void Insert(Label label) { InsertInterval(label, label + 1); }
  void InsertInterval(Label begin, Label end);
  void Union(const LabelIntervalSet& other);

  bool Contains(Label label) const;
  // True when some label in [begin, end) is a member.
  bool IntersectsRange(Label begin, Label end) const;

  bool Empty() const { return intervals_.empty(); }
  size_t NumIntervals() const { return intervals_.size(); }
  size_t Count() const;
  const std::vector<Interval>& Intervals() const { return intervals_; }
  std::vector<Label> Labels() const;

  friend bool operator==(const LabelIntervalSet&,
                         const LabelIntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace fstkey

#endif  // FSTKEY_FST_LABEL_INTERVAL_SET_H_
