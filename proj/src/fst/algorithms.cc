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

#include "fstkey/fst/algorithms.h"

#include <algorithm>
#include <functional>
#include <queue>

#include "fstkey/errors.h"

namespace fstkey {
namespace {

std::vector<bool> Accessible(const WeightedFst& fst) {
  std::vector<bool> seen(fst.NumStates(), false);
  if (fst.Start() == kNoState) return seen;
  std::vector<StateId> stack{fst.Start()};
  seen[fst.Start()] = true;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (const Arc& a : fst.Arcs(s)) {
      if (!seen[a.nextstate]) {
        seen[a.nextstate] = true;
        stack.push_back(a.nextstate);
      }
    }
  }
  return seen;
}

std::vector<std::vector<StateId>> ReverseAdjacency(const WeightedFst& fst) {
  std::vector<std::vector<StateId>> rev(fst.NumStates());
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    for (const Arc& a : fst.Arcs(s)) rev[a.nextstate].push_back(s);
  }
  return rev;
}

std::vector<bool> Coaccessible(const WeightedFst& fst) {
  const auto rev = ReverseAdjacency(fst);
  std::vector<bool> seen(fst.NumStates(), false);
  std::vector<StateId> stack;
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (fst.IsFinal(s)) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId p : rev[s]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

}  // namespace

WeightedFst Connect(const WeightedFst& fst, std::vector<StateId>* old_to_new) {
  const auto acc = Accessible(fst);
  const auto coacc = Coaccessible(fst);
  std::vector<StateId> map(fst.NumStates(), kNoState);
  WeightedFst out;
  out.SetInputSymbols(fst.InputSymbols());
  out.SetOutputSymbols(fst.OutputSymbols());
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (acc[s] && coacc[s]) map[s] = out.AddState();
  }
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (map[s] == kNoState) continue;
    out.SetFinal(map[s], fst.Final(s));
    for (const Arc& a : fst.Arcs(s)) {
      if (map[a.nextstate] == kNoState) continue;
      Arc b = a;
      b.nextstate = map[a.nextstate];
      out.AddArc(map[s], b);
    }
  }
  if (fst.Start() != kNoState && map[fst.Start()] != kNoState) {
    out.SetStart(map[fst.Start()]);
  }
  // Arc order within a state is preserved, so sort flags carry over.
  out.SetProperty(kILabelSorted, fst.HasProperty(kILabelSorted));
  out.SetProperty(kOLabelSorted, fst.HasProperty(kOLabelSorted));
  if (old_to_new) *old_to_new = std::move(map);
  return out;
}

WeightedFst ArcSort(const WeightedFst& fst, Tape tape) {
  WeightedFst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s) {
    auto& arcs = out.MutableArcs(s);
    if (tape == Tape::kInput) {
      std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
        return x.ilabel < y.ilabel;
      });
    } else {
      std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
        return x.olabel < y.olabel;
      });
    }
  }
  out.SetProperty(kILabelSorted, tape == Tape::kInput);
  out.SetProperty(kOLabelSorted, tape == Tape::kOutput);
  return out;
}

void RelabelTape(WeightedFst& fst, Tape tape, const std::vector<Label>& map) {
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    for (Arc& a : fst.MutableArcs(s)) {
      Label& l = tape == Tape::kInput ? a.ilabel : a.olabel;
      if (l == kEpsilon) continue;
      if (l < 0 || static_cast<size_t>(l) >= map.size()) {
        throw ConfigError("relabel map does not cover label " +
                          std::to_string(l));
      }
      l = map[l];
    }
  }
}

bool IsTrim(const WeightedFst& fst) {
  const auto acc = Accessible(fst);
  const auto coacc = Coaccessible(fst);
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (!acc[s] || !coacc[s]) return false;
  }
  return true;
}

std::vector<Path> ShortestPath(const WeightedFst& fst, size_t n) {
  std::vector<Path> results;
  if (n == 0 || fst.Start() == kNoState) return results;
  const StateId ns = fst.NumStates();

  // Exact remaining cost to a final state, used as the A* heuristic.
  std::vector<double> to_final(ns, Weight::Zero().Value());
  {
    std::vector<std::vector<std::pair<StateId, double>>> rev(ns);
    for (StateId s = 0; s < ns; ++s) {
      for (const Arc& a : fst.Arcs(s)) {
        rev[a.nextstate].emplace_back(s, a.weight.Value());
      }
    }
    using Item = std::pair<double, StateId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (StateId s = 0; s < ns; ++s) {
      if (fst.IsFinal(s)) {
        to_final[s] = fst.Final(s).Value();
        pq.emplace(to_final[s], s);
      }
    }
    while (!pq.empty()) {
      auto [d, s] = pq.top();
      pq.pop();
      if (d > to_final[s]) continue;
      for (auto [p, w] : rev[s]) {
        if (d + w < to_final[p]) {
          to_final[p] = d + w;
          pq.emplace(to_final[p], p);
        }
      }
    }
  }
  if (std::isinf(to_final[fst.Start()])) return results;

  struct Node {
    StateId state;
    int32_t parent;
    Label ilabel;
    Label olabel;
    double cost;
  };
  std::vector<Node> nodes;
  struct Entry {
    double priority;
    int32_t node;
    bool complete;
  };
  auto cmp = [](const Entry& x, const Entry& y) {
    if (x.priority != y.priority) return x.priority > y.priority;
    return x.node > y.node;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
  std::vector<size_t> pops(ns, 0);

  nodes.push_back({fst.Start(), -1, kEpsilon, kEpsilon, 0.0});
  pq.push({to_final[fst.Start()], 0, false});
  double cutoff = Weight::Zero().Value();
  while (!pq.empty()) {
    const Entry e = pq.top();
    pq.pop();
    if (results.size() >= n && e.priority > cutoff) break;
    const Node node = nodes[e.node];
    if (e.complete) {
      Path p;
      p.cost = e.priority;
      for (int32_t i = e.node; i >= 0; i = nodes[i].parent) {
        if (nodes[i].ilabel != kEpsilon) p.ilabels.push_back(nodes[i].ilabel);
        if (nodes[i].olabel != kEpsilon) p.olabels.push_back(nodes[i].olabel);
      }
      std::reverse(p.ilabels.begin(), p.ilabels.end());
      std::reverse(p.olabels.begin(), p.olabels.end());
      results.push_back(std::move(p));
      if (results.size() == n) cutoff = e.priority;
      continue;
    }
    if (pops[node.state] >= n) continue;
    ++pops[node.state];
    if (fst.IsFinal(node.state)) {
      pq.push({node.cost + fst.Final(node.state).Value(), e.node, true});
    }
    for (const Arc& a : fst.Arcs(node.state)) {
      if (std::isinf(to_final[a.nextstate])) continue;
      const double g = node.cost + a.weight.Value();
      nodes.push_back({a.nextstate, e.node, a.ilabel, a.olabel, g});
      pq.push({g + to_final[a.nextstate],
               static_cast<int32_t>(nodes.size() - 1), false});
    }
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const Path& x, const Path& y) {
                     if (x.cost != y.cost) return x.cost < y.cost;
                     return x.olabels < y.olabels;
                   });
  if (results.size() > n) results.resize(n);
  return results;
}

ReachableLabels ComputeReachableLabels(const WeightedFst& fst) {
  if (!IsTrim(fst)) {
    throw ConfigError(
        "reachable labels need a trim machine; call Connect() first");
  }
  ReachableLabels out;
  const StateId ns = fst.NumStates();

  Label max_label = fst.OutputSymbols() ? fst.OutputSymbols()->Size() - 1 : 0;
  for (StateId s = 0; s < ns; ++s) {
    for (const Arc& a : fst.Arcs(s)) max_label = std::max(max_label, a.olabel);
  }
  out.relabel.assign(max_label + 1, kNoLabel);
  out.relabel[0] = 0;
  Label next_id = 1;

  // Depth-first discovery order of output labels.
  if (ns > 0) {
    std::vector<bool> seen(ns, false);
    std::vector<std::pair<StateId, size_t>> stack{{fst.Start(), 0}};
    seen[fst.Start()] = true;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      const auto arcs = fst.Arcs(s);
      if (i == arcs.size()) {
        stack.pop_back();
        continue;
      }
      const Arc& a = arcs[i++];
      if (a.olabel != kEpsilon && out.relabel[a.olabel] == kNoLabel) {
        out.relabel[a.olabel] = next_id++;
      }
      if (!seen[a.nextstate]) {
        seen[a.nextstate] = true;
        stack.emplace_back(a.nextstate, 0);
      }
    }
  }
  for (Label l = 1; l <= max_label; ++l) {
    if (out.relabel[l] == kNoLabel) out.relabel[l] = next_id++;
  }

  // Tarjan SCCs; components come out in reverse topological order, so every
  // successor component is complete when a component is emitted.
  std::vector<int32_t> index(ns, -1), low(ns, 0), comp(ns, -1);
  std::vector<bool> on_stack(ns, false);
  std::vector<StateId> scc_stack;
  std::vector<LabelIntervalSet> comp_sets;
  out.sets.assign(ns, {});
  int32_t counter = 0;
  for (StateId root = 0; root < ns; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<StateId, size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [s, i] = call.back();
      const auto arcs = fst.Arcs(s);
      if (i < arcs.size()) {
        const StateId t = arcs[i++].nextstate;
        if (index[t] == -1) {
          index[t] = low[t] = counter++;
          scc_stack.push_back(t);
          on_stack[t] = true;
          call.emplace_back(t, 0);
        } else if (on_stack[t]) {
          low[s] = std::min(low[s], index[t]);
        }
        continue;
      }
      const StateId done = s;
      call.pop_back();
      if (!call.empty()) {
        low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
      if (low[done] != index[done]) continue;
      const int32_t c = static_cast<int32_t>(comp_sets.size());
      std::vector<StateId> members;
      StateId m;
      do {
        m = scc_stack.back();
        scc_stack.pop_back();
        on_stack[m] = false;
        comp[m] = c;
        members.push_back(m);
      } while (m != done);
      LabelIntervalSet set;
      for (StateId x : members) {
        for (const Arc& a : fst.Arcs(x)) {
          if (a.olabel != kEpsilon) set.Insert(out.relabel[a.olabel]);
          if (comp[a.nextstate] != c) set.Union(comp_sets[comp[a.nextstate]]);
        }
      }
      for (StateId x : members) out.sets[x] = set;
      comp_sets.push_back(std::move(set));
    }
  }
  return out;
}

Relation EnumerateRelation(const WeightedFst& fst, int max_input_length) {
  Relation rel;
  if (fst.Start() == kNoState) return rel;
  const int max_depth = (max_input_length + 1) * (fst.NumStates() + 1);
  std::vector<Label> in, out;
  std::function<void(StateId, double, int)> walk = [&](StateId s, double cost,
                                                       int depth) {
    if (fst.IsFinal(s)) {
      const double total = cost + fst.Final(s).Value();
      auto [it, inserted] = rel.try_emplace({in, out}, total);
      if (!inserted) it->second = std::min(it->second, total);
    }
    if (depth >= max_depth) return;
    for (const Arc& a : fst.Arcs(s)) {
      if (a.ilabel != kEpsilon &&
          static_cast<int>(in.size()) >= max_input_length) {
        continue;
      }
      if (a.ilabel != kEpsilon) in.push_back(a.ilabel);
      if (a.olabel != kEpsilon) out.push_back(a.olabel);
      walk(a.nextstate, cost + a.weight.Value(), depth + 1);
      if (a.ilabel != kEpsilon) in.pop_back();
      if (a.olabel != kEpsilon) out.pop_back();
    }
  };
  walk(fst.Start(), 0.0, 0);
  return rel;
}

}  // namespace fstkey
