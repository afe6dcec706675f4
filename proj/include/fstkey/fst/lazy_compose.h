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

#ifndef FSTKEY_FST_LAZY_COMPOSE_H_
#define FSTKEY_FST_LAZY_COMPOSE_H_

#include <deque>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <vector>

#include "fstkey/fst/algorithms.h"
#include "fstkey/fst/fst.h"
#include "fstkey/fst/label_interval_set.h"

namespace fstkey {

// Arc of the composed graph. right_weight is the share of weight that came
// from the right operand (the language model part).
struct ComposedArc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  Weight weight;
  Weight right_weight;
  StateId nextstate = kNoState;
};

// Result of matching one label against a backoff machine: the arcs with
// that label at the first state of the backoff chain that has any, and the
// backoff weight paid to get there. arcs is empty when nothing matches.
struct BackoffMatch {
  Weight backoff;
  std::span<const Arc> arcs;
};

// Label lookup on a machine whose epsilon-input arcs are failure (backoff)
// transitions: a label not present at a state is retried at the state's
// backoff target, accumulating the backoff weight. Each state may carry at
// most one epsilon arc, stored first in its ilabel-sorted arc list.
class BackoffMatcher {
 public:
  explicit BackoffMatcher(std::shared_ptr<const WeightedFst> fst);

  const WeightedFst& Fst() const { return *fst_; }
  BackoffMatch Match(StateId s, Label label) const;
  // Final weight with backoff semantics.
  Weight Final(StateId s) const;
  // True when some state on the backoff chain of s has an arc with a label
  // in the set.
  bool AcceptsAny(StateId s, const LabelIntervalSet& labels) const;
  // Backoff arc of s, if any.
  const Arc* BackoffArc(StateId s) const;

 private:
  std::shared_ptr<const WeightedFst> fst_;
};

struct LazyComposeOptions {
  // Label-reachability blocking of dead-end states.
  bool lookahead = true;
};

// On-demand composition of a left transducer with a backoff machine on the
// right. States are materialized by Expand(); the composed state table grows
// as the search touches new tuples.
//
// Thread safety: Expand, Final and Tuple may be called concurrently. The
// first completed expansion of a state wins; later calls return it.
class LazyComposedGraph {
 public:
  LazyComposedGraph(
      std::shared_ptr<const WeightedFst> left,
      std::shared_ptr<const WeightedFst> right,
      std::shared_ptr<const std::vector<LabelIntervalSet>> left_reachable,
      LazyComposeOptions options = {});
  ~LazyComposedGraph();

  LazyComposedGraph(const LazyComposedGraph&) = delete;
  LazyComposedGraph& operator=(const LazyComposedGraph&) = delete;

  StateId Start() const { return 0; }
  // Returns a stable reference; the list is never modified once built.
  const std::vector<ComposedArc>& Expand(StateId s);
  Weight Final(StateId s) const;
  ComposeTuple Tuple(StateId s) const;
  // Composed id of a tuple, creating it when absent.
  StateId FindOrAdd(const ComposeTuple& t);

  StateId NumStates() const;
  size_t NumExpanded() const;
  // Number of arcs rejected by look-ahead blocking so far.
  size_t NumBlocked() const;

  const WeightedFst& Left() const { return *left_; }
  const BackoffMatcher& Right() const { return right_; }
  const LabelIntervalSet& LeftReachable(StateId left_state) const {
    return (*reachable_)[left_state];
  }
  const LazyComposeOptions& Options() const { return options_; }

  // Expands every reachable state and copies the result into a plain
  // machine (state i of the result is composed state i).
  WeightedFst Materialize();

 private:
  class StateTable;

  bool Blocked(StateId left_state, StateId right_state) const;
  StateId FindOrAddLocked(const ComposeTuple& t);

  std::shared_ptr<const WeightedFst> left_;
  BackoffMatcher right_;
  std::shared_ptr<const std::vector<LabelIntervalSet>> reachable_;
  LazyComposeOptions options_;
  // silent_final_[l]: a final state is reachable from l without output.
  std::vector<bool> silent_final_;

  mutable std::shared_mutex mu_;
  std::unique_ptr<StateTable> table_;
  std::deque<std::optional<std::vector<ComposedArc>>> arcs_;
  size_t expanded_ = 0;
  size_t blocked_ = 0;
};

}  // namespace fstkey

#endif  // FSTKEY_FST_LAZY_COMPOSE_H_
