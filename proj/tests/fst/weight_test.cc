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

#include "fstkey/fst/weight.h"

#include <random>

#include <gtest/gtest.h>

namespace fstkey {
namespace {

TEST(WeightTest, SemiringAxiomsOnRandomTriples) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(0.0, 50.0);
  for (int i = 0; i < 10000; ++i) {
    // Dyadic values keep floating-point addition exact.
    const Weight a(std::round(d(rng) * 64) / 64);
    const Weight b(std::round(d(rng) * 64) / 64);
    const Weight c(std::round(d(rng) * 64) / 64);
    EXPECT_EQ(Plus(a, b), Plus(b, a));
    EXPECT_EQ(Plus(Plus(a, b), c), Plus(a, Plus(b, c)));
    EXPECT_EQ(Times(Times(a, b), c), Times(a, Times(b, c)));
    EXPECT_EQ(Times(a, Plus(b, c)), Plus(Times(a, b), Times(a, c)));
    EXPECT_EQ(Times(a, Weight::One()), a);
    EXPECT_EQ(Plus(a, Weight::Zero()), a);
    EXPECT_TRUE(Times(a, Weight::Zero()).IsZero());
  }
}

TEST(WeightTest, ZeroIsNotFinite) {
  EXPECT_TRUE(Weight::Zero().IsZero());
  EXPECT_FALSE(Weight::Zero().IsFinite());
  EXPECT_TRUE(Weight::One().IsFinite());
}

}  // namespace
}  // namespace fstkey
