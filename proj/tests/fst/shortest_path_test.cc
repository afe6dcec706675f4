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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fstkey/fst/algorithms.h"
#include "test_util.h"

namespace fstkey {
namespace {

void AllPaths(const WeightedFst& f, StateId s, Path& cur, std::vector<Path>& out) {
  if (f.IsFinal(s)) {
    Path p = cur;
    p.cost += f.Final(s).Value();
    out.push_back(p);
  }
  for (const Arc& a : f.Arcs(s)) {
    Path saved = cur;
    if (a.ilabel) cur.ilabels.push_back(a.ilabel);
    if (a.olabel) cur.olabels.push_back(a.olabel);
    cur.cost += a.weight.Value();
    AllPaths(f, a.nextstate, cur, out);
    cur = saved;
  }
}

TEST(ShortestPathTest, MatchesExhaustiveEnumerationOnDags) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedFst f = testing::RandomFst(rng, 6, 3, 0.5, 0.2, true);
    std::vector<Path> all;
    Path empty;
    AllPaths(f, f.Start(), empty, all);
    std::vector<double> costs;
    for (const Path& p : all) costs.push_back(p.cost);
    std::sort(costs.begin(), costs.end());
    const size_t n = 4;
    const std::vector<Path> best = ShortestPath(f, n);
    ASSERT_EQ(best.size(), std::min(n, costs.size())) << "trial " << trial;
    for (size_t i = 0; i < best.size(); ++i) {
      EXPECT_NEAR(best[i].cost, costs[i], 1e-9);
      // Each reported path is a real accepting path with that cost.
      EXPECT_NE(std::find_if(all.begin(), all.end(),
                             [&](const Path& p) {
                               return p.ilabels == best[i].ilabels &&
                                      p.olabels == best[i].olabels &&
                                      std::abs(p.cost - best[i].cost) < 1e-9;
                             }),
                all.end());
    }
  }
}

TEST(ShortestPathTest, EmptyMachineHasNoPath) {
  WeightedFst f;
  f.AddState();
  f.SetStart(0);
  EXPECT_TRUE(ShortestPath(f, 3).empty());
}

TEST(ShortestPathTest, CyclicMachineFindsRepeatedLoops) {
  WeightedFst f;
  f.AddState();
  f.SetStart(0);
  f.SetFinal(0, Weight::One());
  f.AddArc(0, {1, 1, Weight(1.0), 0});
  const auto paths = ShortestPath(f, 3);
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(paths[2].ilabels.size(), 2u);
  EXPECT_DOUBLE_EQ(paths[2].cost, 2.0);
}

}  // namespace
}  // namespace fstkey
