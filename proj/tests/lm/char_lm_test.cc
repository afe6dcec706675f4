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

#include "fstkey/lm/char_lm.h"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "fstkey/errors.h"

namespace fstkey {
namespace {

std::vector<std::string> Letters() {
  std::vector<std::string> a;
  for (char c = 'a'; c <= 'z'; ++c) a.emplace_back(1, c);
  a.emplace_back("'");
  return a;
}

CharLM English() {
  return CharLM::Train(Letters(), {{"the", 0.05},
                                   {"this", 0.01},
                                   {"that", 0.01},
                                   {"there", 0.005},
                                   {"then", 0.004},
                                   {"with", 0.006},
                                   {"other", 0.002},
                                   {"it's", 0.003},
                                   {"what", 0.004}});
}

TEST(CharLMTest, EveryContextIsADistribution) {
  const CharLM m = English();
  const int k = m.AlphabetSize();
  std::vector<CharLM::Id> firsts{m.Unknown(), m.Begin()};
  for (int i = 0; i < k; ++i) firsts.push_back(i);
  for (CharLM::Id a : firsts) {
    for (CharLM::Id b = 0; b <= m.Begin(); ++b) {
      if (b == m.End()) continue;
      double total = 0;
      for (CharLM::Id c = 0; c <= m.End(); ++c) total += std::exp(-m.Cost(a, b, c));
      EXPECT_NEAR(total, 1.0, 1e-6) << a << " " << b;
    }
  }
}

TEST(CharLMTest, EnglishBeatsGibberish) {
  const CharLM m = English();
  EXPECT_LT(m.Score("the"), m.Score("tqx"));
}

TEST(CharLMTest, ChainRule) {
  const CharLM m = English();
  const int a = m.IdOf("a"), b = m.IdOf("b"), c = m.IdOf("c");
  const double expected = m.Cost(m.Unknown(), m.Begin(), a) +
                          m.Cost(m.Begin(), a, b) + m.Cost(a, b, c) +
                          m.Cost(b, c, m.End());
  EXPECT_NEAR(m.Score("abc"), expected, 1e-9);
}

TEST(CharLMTest, UnknownCharacterUsesFloor) {
  const CharLM m = English();
  CharLMParams p;
  const double with = m.Score("t#e");
  // The unknown character costs the floor; it also erases the context of
  // the next prediction.
  const double expected = m.Cost(m.Unknown(), m.Begin(), m.IdOf("t")) +
                          p.unknown_cost +
                          m.Cost(m.IdOf("t"), m.Unknown(), m.IdOf("e")) +
                          m.Cost(m.Unknown(), m.IdOf("e"), m.End());
  EXPECT_NEAR(with, expected, 1e-9);
}

TEST(CharLMTest, EmptyTextIsAnError) {
  EXPECT_THROW(English().Score(""), InputError);
}

TEST(CharLMTest, SerializationRoundTrip) {
  const CharLM m = English();
  std::stringstream ss;
  m.Write(ss);
  const CharLM r = CharLM::Read(ss);
  for (const char* w : {"the", "qqq", "it's", "zebra"}) {
    EXPECT_DOUBLE_EQ(r.Score(w), m.Score(w));
  }
}

}  // namespace
}  // namespace fstkey
