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

#ifndef FSTKEY_FST_ALGORITHMS_H_
#define FSTKEY_FST_ALGORITHMS_H_

#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "fstkey/fst/fst.h"
#include "fstkey/fst/label_interval_set.h"

namespace fstkey {

// Pair of operand states behind a composed state, plus the epsilon filter
// state (0, 1 or 2).
struct ComposeTuple {
  StateId left = kNoState;
  StateId right = kNoState;
  int filter = 0;

  friend bool operator==(const ComposeTuple&, const ComposeTuple&) = default;
};

struct ComposeOptions {
  // When set, receives the operand tuple of every result state.
  std::vector<ComposeTuple>* provenance = nullptr;
};

// Relational composition with the three-state epsilon-sequencing filter.
// Throws ConfigError when a's output symbols differ from b's input symbols
// (checked only when both tables are attached).
WeightedFst Compose(const WeightedFst& a, const WeightedFst& b,
                    const ComposeOptions& options = {});

// Keeps states that are both accessible and coaccessible. A machine whose
// start is not coaccessible becomes empty. When old_to_new is given it
// receives kNoState for removed states.
WeightedFst Connect(const WeightedFst& fst,
                    std::vector<StateId>* old_to_new = nullptr);

// Stable sort of every state's arcs on the given tape.
WeightedFst ArcSort(const WeightedFst& fst, Tape tape);

// Applies map[label] to every label on the tape (label 0 stays 0).
void RelabelTape(WeightedFst& fst, Tape tape, const std::vector<Label>& map);

bool IsTrim(const WeightedFst& fst);

struct Path {
  std::vector<Label> ilabels;  // epsilons removed
  std::vector<Label> olabels;  // epsilons removed
  double cost = 0.0;

  friend bool operator==(const Path&, const Path&) = default;
};

// The n lowest-cost accepting paths, cost-ascending, equal costs ordered by
// output label sequence. Requires nonnegative arc weights.
std::vector<Path> ShortestPath(const WeightedFst& fst, size_t n);

// Per-state output-label reachability with a compressing relabeling.
struct ReachableLabels {
  // relabel[old] = new; covers every label up to the largest one seen (and
  // the output symbol table size when one is attached).
  std::vector<Label> relabel;
  // sets[s]: output labels (new ids) on some path from s to a final state.
  std::vector<LabelIntervalSet> sets;
};

// Requires a trim machine (throws ConfigError otherwise; run Connect first).
// New label ids follow depth-first discovery order from the start, so the
// reachable set of a trie-shaped machine compresses to O(1) intervals.
ReachableLabels ComputeReachableLabels(const WeightedFst& fst);

// Weighted relation of a machine restricted to input strings up to
// max_input_length: (input, output) -> min cost. Exponential; meant as a
// testing oracle for small machines. Epsilon cycles must not exist.
using Relation = std::map<std::pair<std::vector<Label>, std::vector<Label>>,
                          double>;
Relation EnumerateRelation(const WeightedFst& fst, int max_input_length);

}  // namespace fstkey

#endif  // FSTKEY_FST_ALGORITHMS_H_
