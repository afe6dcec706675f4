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

#ifndef FSTKEY_FEATURES_PREDICTION_H_
#define FSTKEY_FEATURES_PREDICTION_H_

#include <cstdint>
#include <functional>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fstkey/features/scored.h"
#include "fstkey/graph/decoder_graph.h"

namespace fstkey {

// LRU map from (G state, k) to a prediction list. Safe to share between
// sessions on one graph.
class PredictionCache {
 public:
  explicit PredictionCache(size_t capacity = 4096) : capacity_(capacity) {}

  std::optional<std::vector<Scored>> Get(StateId state, int k);
  void Put(StateId state, int k, std::vector<Scored> value);
  size_t Size() const;
  size_t hits() const;
  size_t misses() const;

 private:
  using Key = uint64_t;
  static Key MakeKey(StateId s, int k) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(s)) << 32) |
           static_cast<uint32_t>(k);
  }

  size_t capacity_;
  mutable std::mutex mu_;
  std::list<std::pair<Key, std::vector<Scored>>> order_;  // most recent first
  std::unordered_map<Key, decltype(order_)::iterator> index_;
  size_t hits_ = 0;
  size_t misses_ = 0;
};

// The k cheapest next words after G state s, following backoff arcs. A
// word listed at a state hides its lower-order entries. Ties break on the
// word label. cache may be null.
std::vector<Scored> PredictNext(const DecoderGraph& graph, StateId s, int k,
                                PredictionCache* cache = nullptr);

// Interpolates list costs with the user model: cost + weight * (dynamic -
// cost) for covered words. Words the user model has seen after previous
// (or at all, without previous) join the list, priced the same way from
// main_cost, or from their dynamic cost alone when main_cost has none.
void MergeDynamic(std::vector<Scored>& list, const DynamicNGram& dynamic,
                  const std::optional<std::string>& previous, double weight,
                  int k, const std::function<std::optional<double>(const std::string&)>& main_cost);

}  // namespace fstkey

#endif  // FSTKEY_FEATURES_PREDICTION_H_
