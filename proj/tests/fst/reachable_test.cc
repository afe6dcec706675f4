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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fstkey/errors.h"
#include "fstkey/fst/algorithms.h"
#include "test_util.h"

namespace fstkey {
namespace {

std::vector<bool> Forward(const WeightedFst& f, StateId s) {
  std::vector<bool> seen(f.NumStates(), false);
  std::vector<StateId> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (const Arc& a : f.Arcs(q)) {
      if (!seen[a.nextstate]) {
        seen[a.nextstate] = true;
        stack.push_back(a.nextstate);
      }
    }
  }
  return seen;
}

// Old-id labels on some path from s to a final state. In a trim machine every
// state is coaccessible, so this is every label on an arc reachable from s.
std::set<Label> BruteForce(const WeightedFst& f, StateId s) {
  std::set<Label> out;
  const auto seen = Forward(f, s);
  for (StateId q = 0; q < f.NumStates(); ++q) {
    if (!seen[q]) continue;
    for (const Arc& a : f.Arcs(q)) {
      if (a.olabel) out.insert(a.olabel);
    }
  }
  return out;
}

TEST(ReachableLabelsTest, AgreesWithForwardSearchOnRandomTrimMachines) {
  std::mt19937 rng(77);
  int tested = 0;
  while (tested < 100) {
    const WeightedFst f = Connect(testing::RandomFst(rng, 7, 6, 0.3, 0.2));
    if (f.NumStates() == 0) continue;
    ++tested;
    const ReachableLabels r = ComputeReachableLabels(f);
    // Relabeling is a bijection on the labels in use.
    std::set<Label> images;
    for (size_t old = 1; old < r.relabel.size(); ++old) {
      images.insert(r.relabel[old]);
    }
    EXPECT_EQ(images.size(), r.relabel.size() - 1);
    for (StateId s = 0; s < f.NumStates(); ++s) {
      std::set<Label> expected;
      for (Label l : BruteForce(f, s)) expected.insert(r.relabel[l]);
      const auto labels = r.sets[s].Labels();
      EXPECT_EQ(std::set<Label>(labels.begin(), labels.end()), expected);
    }
  }
}

// Trie for "I", "I've", "If" with the word label on the arc leaving the last
// character.
TEST(ReachableLabelsTest, TrieCompressesToSingleIntervals) {
  SymbolTable words;
  const Label w_i = words.AddSymbol("I");
  const Label w_ive = words.AddSymbol("I've");
  const Label w_if = words.AddSymbol("If");
  enum : Label { kI = 1, kApos, kV, kE, kF };
  WeightedFst f;
  for (int i = 0; i < 8; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {kI, 0, Weight::One(), 1});
  f.AddArc(1, {0, w_i, Weight::One(), 7});
  f.AddArc(1, {kApos, 0, Weight::One(), 2});
  f.AddArc(2, {kV, 0, Weight::One(), 3});
  f.AddArc(3, {kE, 0, Weight::One(), 4});
  f.AddArc(4, {0, w_ive, Weight::One(), 7});
  f.AddArc(1, {kF, 0, Weight::One(), 5});
  f.AddArc(5, {0, w_if, Weight::One(), 7});
  f.AddState();
  f.SetFinal(7, Weight::One());
  const WeightedFst trim = Connect(f);
  const ReachableLabels r = ComputeReachableLabels(trim);
  EXPECT_EQ(r.sets[trim.Start()].Count(), 3u);
  for (StateId s = 0; s < trim.NumStates(); ++s) {
    EXPECT_LE(r.sets[s].NumIntervals(), 1u) << "state " << s;
  }
  // After 'I' all three words remain; after "I'" only "I've".
  EXPECT_EQ(r.sets[1].Count(), 3u);
  EXPECT_EQ(r.sets[2].Labels(), std::vector<Label>{r.relabel[w_ive]});
}

TEST(ReachableLabelsTest, RejectsNonTrimMachine) {
  WeightedFst f;
  f.AddState();
  f.AddState();
  f.SetStart(0);
  f.SetFinal(0, Weight::One());
  f.AddArc(0, {1, 1, Weight::One(), 1});
  EXPECT_THROW(ComputeReachableLabels(f), ConfigError);
}

}  // namespace
}  // namespace fstkey
