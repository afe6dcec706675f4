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

#include "fstkey/lm/dynamic_ngram.h"

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>

namespace fstkey {
namespace {

TEST(DynamicNGramTest, RepeatedPhraseScoresBetter) {
  DynamicNGram d;
  d.Observe({"good", "luck"}, 1);
  d.Observe({"good", "luck"}, 2);
  d.Observe({"bad", "day"}, 3);
  const auto luck = d.Score("luck", std::string("good"));
  const auto day = d.Score("day", std::string("good"));
  ASSERT_TRUE(luck && day);
  EXPECT_LT(luck->Value(), day->Value());
  EXPECT_FALSE(d.Score("zebra", std::string("good")));
  EXPECT_FALSE(d.UnigramScore("zebra"));
}

TEST(DynamicNGramTest, MatchesCountingOracle) {
  std::mt19937 rng(10);
  std::uniform_int_distribution<int> pick(0, 9);
  std::vector<std::string> history;
  for (int i = 0; i < 50; ++i) history.push_back("v" + std::to_string(pick(rng)));
  DynamicNGram d(1.0);
  d.Observe(history, 0);
  std::map<std::string, double> uni;
  std::map<std::pair<std::string, std::string>, double> bi;
  std::map<std::string, double> ctx;
  for (size_t i = 0; i < history.size(); ++i) {
    uni[history[i]] += 1;
    if (i) {
      bi[{history[i - 1], history[i]}] += 1;
      ctx[history[i - 1]] += 1;
    }
  }
  for (const auto& [w, c] : uni) {
    EXPECT_DOUBLE_EQ(d.UnigramCount(w), c);
    EXPECT_NEAR(d.UnigramScore(w)->Value(), -std::log(c / 50.0), 1e-12);
    for (const auto& [h, n] : ctx) {
      const double p = (bi[{h, w}] + c / 50.0) / (n + 1.0);
      EXPECT_NEAR(d.Score(w, h)->Value(), -std::log(p), 1e-12);
    }
  }
}

TEST(DynamicNGramTest, DecayNeverIncreasesCounts) {
  DynamicNGram d;
  d.Observe({"a", "b", "a"}, 0);
  const double before = d.UnigramCount("a");
  d.Decay(0.5);
  EXPECT_DOUBLE_EQ(d.UnigramCount("a"), before * 0.5);
  EXPECT_DOUBLE_EQ(d.BigramCount("a", "b"), 0.5);
  d.Decay(1.0);
  EXPECT_DOUBLE_EQ(d.UnigramCount("a"), before * 0.5);
  EXPECT_THROW(d.Decay(1.5), std::exception);
}

TEST(DynamicNGramTest, PreviousWordLinksCommits) {
  DynamicNGram d;
  d.Observe({"good"}, 0);
  d.Observe({"luck"}, 1, std::string("good"));
  EXPECT_DOUBLE_EQ(d.BigramCount("good", "luck"), 1.0);
}

TEST(DynamicNGramTest, SaveLoadRoundTrip) {
  DynamicNGram d;
  d.Observe({"zyzzyva", "is", "a", "weevil"}, 42);
  std::stringstream ss;
  d.Save(ss);
  const DynamicNGram r = DynamicNGram::Load(ss);
  EXPECT_EQ(r.Vocabulary(), d.Vocabulary());
  EXPECT_DOUBLE_EQ(r.Score("weevil", std::string("a"))->Value(),
                   d.Score("weevil", std::string("a"))->Value());
}

TEST(DynamicNGramTest, ConcurrentObserveAndScore) {
  DynamicNGram d;
  d.Observe({"seed"}, 0);
  std::thread writer([&] {
    for (int i = 0; i < 2000; ++i) d.Observe({"w" + std::to_string(i % 13)}, i);
  });
  std::thread reader([&] {
    for (int i = 0; i < 2000; ++i) {
      const auto s = d.Score("seed", std::string("w1"));
      ASSERT_TRUE(s);
      EXPECT_GE(s->Value(), 0.0);
    }
  });
  writer.join();
  reader.join();
  EXPECT_DOUBLE_EQ(d.TotalCount(), 2001.0);
}

}  // namespace
}  // namespace fstkey
