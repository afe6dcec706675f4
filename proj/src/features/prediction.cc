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

#include "fstkey/features/prediction.h"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace fstkey {

std::optional<std::vector<Scored>> PredictionCache::Get(StateId state, int k) {
  std::lock_guard lock(mu_);
  auto it = index_.find(MakeKey(state, k));
  if (it == index_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

void PredictionCache::Put(StateId state, int k, std::vector<Scored> value) {
  if (capacity_ == 0) return;
  std::lock_guard lock(mu_);
  const Key key = MakeKey(state, k);
  auto it = index_.find(key);
  if (it != index_.end()) {
    it->second->second = std::move(value);
    order_.splice(order_.begin(), order_, it->second);
    return;
  }
  order_.emplace_front(key, std::move(value));
  index_[key] = order_.begin();
  if (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
}

size_t PredictionCache::Size() const {
  std::lock_guard lock(mu_);
  return order_.size();
}

size_t PredictionCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

size_t PredictionCache::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

std::vector<Scored> PredictNext(const DecoderGraph& graph, StateId s, int k,
                                PredictionCache* cache) {
  if (k <= 0) return {};
  if (cache) {
    if (auto hit = cache->Get(s, k)) return *hit;
  }
  const NGramFst& g = graph.g();
  std::unordered_set<Label> seen;
  std::vector<std::pair<double, Label>> found;
  double backoff = 0.0;
  StateId state = s;
  while (state != kNoState) {
    if (state == g.unigram) {
      int taken = 0;
      for (const auto& [cost, label] : graph.UnigramList()) {
        if (taken == k) break;
        if (seen.insert(label).second) {
          found.emplace_back(backoff + cost, label);
          ++taken;
        }
      }
      break;
    }
    StateId next = kNoState;
    double next_weight = 0.0;
    for (const Arc& a : g.fst.Arcs(state)) {
      if (a.ilabel == kEpsilon) {
        next = a.nextstate;
        next_weight = a.weight.Value();
        continue;
      }
      if (graph.OutputKindOf(a.ilabel) != OutputKind::kWord) continue;
      if (seen.insert(a.ilabel).second) found.emplace_back(backoff + a.weight.Value(), a.ilabel);
    }
    backoff += next_weight;
    state = next;
  }
  std::sort(found.begin(), found.end());
  if (found.size() > static_cast<size_t>(k)) found.resize(k);
  std::vector<Scored> out;
  for (const auto& [cost, label] : found) out.push_back({graph.WordText(label), cost});
  if (cache) cache->Put(s, k, out);
  return out;
}

void MergeDynamic(std::vector<Scored>& list, const DynamicNGram& dynamic,
                  const std::optional<std::string>& previous, double weight,
                  int k, const std::function<std::optional<double>(const std::string&)>& main_cost) {
  std::set<std::string> listed;
  for (Scored& s : list) {
    listed.insert(s.text);
    if (auto d = dynamic.Score(s.text, previous)) s.cost += weight * (d->Value() - s.cost);
  }
  for (const std::string& w : dynamic.Vocabulary()) {
    if (listed.count(w)) continue;
    const double seen = previous ? dynamic.BigramCount(*previous, w) : dynamic.UnigramCount(w);
    if (seen <= 0) continue;
    const auto d = dynamic.Score(w, previous);
    if (!d) continue;
    const double main = main_cost(w).value_or(d->Value());
    list.push_back({w, main + weight * (d->Value() - main)});
  }
  std::stable_sort(list.begin(), list.end(), [](const Scored& a, const Scored& b) {
    return a.cost < b.cost;
  });
  if (list.size() > static_cast<size_t>(k)) list.resize(k);
}

}  // namespace fstkey
