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

#include "fstkey/fst/lazy_compose.h"

#include <algorithm>
#include <mutex>

#include "fstkey/errors.h"

namespace fstkey {

BackoffMatcher::BackoffMatcher(std::shared_ptr<const WeightedFst> fst)
    : fst_(std::move(fst)) {
  if (!fst_->HasProperty(kILabelSorted)) {
    fst_ = std::make_shared<const WeightedFst>(ArcSort(*fst_, Tape::kInput));
  }
}

const Arc* BackoffMatcher::BackoffArc(StateId s) const {
  const auto arcs = fst_->Arcs(s);
  if (!arcs.empty() && arcs.front().ilabel == kEpsilon) return &arcs.front();
  return nullptr;
}

BackoffMatch BackoffMatcher::Match(StateId s, Label label) const {
  Weight backoff = Weight::One();
  while (true) {
    const auto arcs = fst_->Arcs(s);
    auto lo = std::lower_bound(
        arcs.begin(), arcs.end(), label,
        [](const Arc& a, Label l) { return a.ilabel < l; });
    auto hi = lo;
    while (hi != arcs.end() && hi->ilabel == label) ++hi;
    if (lo != hi) {
      return {backoff, arcs.subspan(lo - arcs.begin(), hi - lo)};
    }
    const Arc* bo = BackoffArc(s);
    if (!bo) return {backoff, {}};
    backoff = Times(backoff, bo->weight);
    s = bo->nextstate;
  }
}

Weight BackoffMatcher::Final(StateId s) const {
  Weight backoff = Weight::One();
  while (true) {
    if (fst_->IsFinal(s)) return Times(backoff, fst_->Final(s));
    const Arc* bo = BackoffArc(s);
    if (!bo) return Weight::Zero();
    backoff = Times(backoff, bo->weight);
    s = bo->nextstate;
  }
}

bool BackoffMatcher::AcceptsAny(StateId s,
                                const LabelIntervalSet& labels) const {
  if (labels.Empty()) return false;
  while (true) {
    const auto arcs = fst_->Arcs(s);
    for (const auto& [begin, end] : labels.Intervals()) {
      auto it = std::lower_bound(
          arcs.begin(), arcs.end(), begin,
          [](const Arc& a, Label l) { return a.ilabel < l; });
      if (it != arcs.end() && it->ilabel < end) return true;
    }
    const Arc* bo = BackoffArc(s);
    if (!bo) return false;
    s = bo->nextstate;
  }
}

// Open-addressing map from (left, right, filter) to a dense composed id.
class LazyComposedGraph::StateTable {
 public:
  StateTable() : slots_(1024, -1) {}

  StateId Find(const ComposeTuple& t) const {
    size_t i = Hash(t) & (slots_.size() - 1);
    while (slots_[i] != -1) {
      if (tuples_[slots_[i]] == t) return slots_[i];
      i = (i + 1) & (slots_.size() - 1);
    }
    return kNoState;
  }

  StateId Insert(const ComposeTuple& t) {
    if ((tuples_.size() + 1) * 2 > slots_.size()) Grow();
    const StateId id = static_cast<StateId>(tuples_.size());
    tuples_.push_back(t);
    Place(id);
    return id;
  }

  const ComposeTuple& Tuple(StateId s) const { return tuples_[s]; }
  StateId Size() const { return static_cast<StateId>(tuples_.size()); }

 private:
  static size_t Hash(const ComposeTuple& t) {
    uint64_t h = (static_cast<uint64_t>(static_cast<uint32_t>(t.left)) << 32) |
                 static_cast<uint32_t>(t.right);
    h ^= static_cast<uint64_t>(t.filter) << 62;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ull;
    h ^= h >> 33;
    return static_cast<size_t>(h);
  }

  void Place(StateId id) {
    size_t i = Hash(tuples_[id]) & (slots_.size() - 1);
    while (slots_[i] != -1) i = (i + 1) & (slots_.size() - 1);
    slots_[i] = id;
  }

  void Grow() {
    slots_.assign(slots_.size() * 2, -1);
    for (StateId id = 0; id < Size(); ++id) Place(id);
  }

  std::vector<ComposeTuple> tuples_;
  std::vector<StateId> slots_;
};

LazyComposedGraph::LazyComposedGraph(
    std::shared_ptr<const WeightedFst> left,
    std::shared_ptr<const WeightedFst> right,
    std::shared_ptr<const std::vector<LabelIntervalSet>> left_reachable,
    LazyComposeOptions options)
    : left_(std::move(left)),
      right_(std::move(right)),
      reachable_(std::move(left_reachable)),
      options_(options),
      table_(std::make_unique<StateTable>()) {
  if (left_->Start() == kNoState || right_.Fst().Start() == kNoState) {
    throw ConfigError("lazy compose: operand without a start state");
  }
  if (!reachable_ || reachable_->size() != static_cast<size_t>(left_->NumStates())) {
    throw ConfigError("lazy compose: reachable sets do not cover the left machine");
  }
  // Reverse search over output-epsilon arcs from the final states.
  const StateId ns = left_->NumStates();
  std::vector<std::vector<StateId>> rev(ns);
  for (StateId s = 0; s < ns; ++s) {
    for (const Arc& a : left_->Arcs(s)) {
      if (a.olabel == kEpsilon) rev[a.nextstate].push_back(s);
    }
  }
  silent_final_.assign(ns, false);
  std::vector<StateId> stack;
  for (StateId s = 0; s < ns; ++s) {
    if (left_->IsFinal(s)) {
      silent_final_[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId p : rev[s]) {
      if (!silent_final_[p]) {
        silent_final_[p] = true;
        stack.push_back(p);
      }
    }
  }
  FindOrAddLocked({left_->Start(), right_.Fst().Start(), 0});
}

LazyComposedGraph::~LazyComposedGraph() = default;

StateId LazyComposedGraph::FindOrAddLocked(const ComposeTuple& t) {
  StateId id = table_->Find(t);
  if (id == kNoState) {
    id = table_->Insert(t);
    arcs_.emplace_back();
  }
  return id;
}

StateId LazyComposedGraph::FindOrAdd(const ComposeTuple& t) {
  {
    std::shared_lock lock(mu_);
    const StateId id = table_->Find(t);
    if (id != kNoState) return id;
  }
  std::unique_lock lock(mu_);
  return FindOrAddLocked(t);
}

bool LazyComposedGraph::Blocked(StateId left_state, StateId right_state) const {
  if (!options_.lookahead || silent_final_[left_state]) return false;
  return !right_.AcceptsAny(right_state, (*reachable_)[left_state]);
}

const std::vector<ComposedArc>& LazyComposedGraph::Expand(StateId s) {
  ComposeTuple t;
  {
    std::shared_lock lock(mu_);
    if (arcs_[s].has_value()) return *arcs_[s];
    t = table_->Tuple(s);
  }
  struct Pending {
    ComposedArc arc;
    ComposeTuple target;
  };
  std::vector<Pending> pending;
  size_t blocked = 0;
  for (const Arc& la : left_->Arcs(t.left)) {
    if (la.olabel == kEpsilon) {
      if (Blocked(la.nextstate, t.right)) {
        ++blocked;
        continue;
      }
      pending.push_back({{la.ilabel, kEpsilon, la.weight, Weight::One(),
                          kNoState},
                         {la.nextstate, t.right, 0}});
      continue;
    }
    const BackoffMatch m = right_.Match(t.right, la.olabel);
    for (const Arc& ra : m.arcs) {
      if (Blocked(la.nextstate, ra.nextstate)) {
        ++blocked;
        continue;
      }
      const Weight rw = Times(m.backoff, ra.weight);
      pending.push_back({{la.ilabel, ra.olabel, Times(la.weight, rw), rw,
                          kNoState},
                         {la.nextstate, ra.nextstate, 0}});
    }
  }
  std::unique_lock lock(mu_);
  if (arcs_[s].has_value()) return *arcs_[s];
  std::vector<ComposedArc> arcs;
  arcs.reserve(pending.size());
  for (auto& p : pending) {
    p.arc.nextstate = FindOrAddLocked(p.target);
    arcs.push_back(p.arc);
  }
  arcs_[s] = std::move(arcs);
  ++expanded_;
  blocked_ += blocked;
  return *arcs_[s];
}

Weight LazyComposedGraph::Final(StateId s) const {
  const ComposeTuple t = Tuple(s);
  return Times(left_->Final(t.left), right_.Final(t.right));
}

ComposeTuple LazyComposedGraph::Tuple(StateId s) const {
  std::shared_lock lock(mu_);
  return table_->Tuple(s);
}

StateId LazyComposedGraph::NumStates() const {
  std::shared_lock lock(mu_);
  return table_->Size();
}

size_t LazyComposedGraph::NumExpanded() const {
  std::shared_lock lock(mu_);
  return expanded_;
}

size_t LazyComposedGraph::NumBlocked() const {
  std::shared_lock lock(mu_);
  return blocked_;
}

WeightedFst LazyComposedGraph::Materialize() {
  for (StateId s = 0; s < NumStates(); ++s) Expand(s);
  WeightedFst out;
  out.SetInputSymbols(left_->InputSymbols());
  out.SetOutputSymbols(right_.Fst().OutputSymbols());
  const StateId n = NumStates();
  for (StateId s = 0; s < n; ++s) out.AddState();
  out.SetStart(Start());
  for (StateId s = 0; s < n; ++s) {
    for (const ComposedArc& a : Expand(s)) {
      out.AddArc(s, {a.ilabel, a.olabel, a.weight, a.nextstate});
    }
    out.SetFinal(s, Final(s));
  }
  return out;
}

}  // namespace fstkey
