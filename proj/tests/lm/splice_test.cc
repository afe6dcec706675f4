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

#include "fstkey/lm/splice.h"

#include <random>

#include <gtest/gtest.h>

#include "fstkey/lm/ngram_model.h"

namespace fstkey {
namespace {

class SpliceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    model_ = NGramModel::Train({{"the", "cat"}, {"the", "dog"}, {"a", "cat"}}, 3,
                               {"the", "cat", "dog", "a"});
    words_ = model_.vocab();
    for (char c = 'a'; c <= 'z'; ++c) {
      alphabet_.emplace_back(1, c);
      lit_.push_back(words_.AddSymbol("<lit>" + std::string(1, c)));
      cw_.push_back(words_.AddSymbol("<cw>" + std::string(1, c)));
    }
    marker_ = words_.AddSymbol("<lit/>");
    cw_end_ = words_.AddSymbol("<cw/>");
    zyzzyva_ = words_.AddSymbol("zyzzyva");
    char_lm_ = CharLM::Train(alphabet_, {{"the", 0.4}, {"cat", 0.3}, {"dog", 0.3}});
    g_ = NGramToFst(model_, words_);
  }

  std::vector<Label> Labels(const std::vector<Label>& table, const std::string& s) {
    std::vector<Label> out;
    for (char c : s) out.push_back(table[c - 'a']);
    return out;
  }

  Weight Walk(const NGramFst& g, StateId s, const std::vector<Label>& labels,
              StateId* end = nullptr, Label* last_out = nullptr) {
    Weight cost = Weight::One();
    for (Label l : labels) {
      const auto step = GWordStep(g.fst, s, l);
      if (!step) return Weight::Zero();
      cost = Times(cost, step->cost);
      s = step->next;
      if (last_out) *last_out = step->olabel;
    }
    if (end) *end = s;
    return cost;
  }

  NGramModel model_;
  SymbolTable words_;
  std::vector<std::string> alphabet_;
  std::vector<Label> lit_, cw_;
  Label marker_, cw_end_, zyzzyva_;
  CharLM char_lm_;
  NGramFst g_;
};

TEST_F(SpliceTest, LiteralRunCost) {
  NGramFst g = g_;
  LiteralGrammarParams p;
  SpliceLiteralGrammar(g, char_lm_, lit_, marker_, p);
  auto labels = Labels(lit_, "qxj");
  labels.push_back(marker_);
  StateId end = kNoState;
  Label out = kNoLabel;
  const Weight w = Walk(g, g.unigram, labels, &end, &out);
  EXPECT_NEAR(w.Value(), p.entry_cost + char_lm_.Score("qxj") + p.marker_cost, 1e-9);
  EXPECT_EQ(end, g.unigram);
  EXPECT_EQ(out, marker_);
  // Intermediate states belong to the literal grammar.
  StateId mid = kNoState;
  Walk(g, g.unigram, Labels(lit_, "qx"), &mid);
  EXPECT_FALSE(g.IsWordState(mid));
}

TEST_F(SpliceTest, LiteralSpliceLeavesWordCostsAlone) {
  NGramFst g = g_;
  SpliceLiteralGrammar(g, char_lm_, lit_, marker_);
  std::mt19937 rng(1);
  std::uniform_int_distribution<Label> word(4, model_.vocab().Size() - 1);
  for (int i = 0; i < 300; ++i) {
    std::vector<Label> s;
    for (int n = i % 6; n > 0; --n) s.push_back(word(rng));
    EXPECT_EQ(GSentenceCost(g.fst, s), GSentenceCost(g_.fst, s));
  }
}

TEST_F(SpliceTest, CharacterWordsReachDynamicWord) {
  NGramFst g = g_;
  const Weight dyn(4.25);
  SpliceCharToWord(g, {{Labels(cw_, "zyzzyva"), zyzzyva_, dyn}}, cw_end_);
  auto labels = Labels(cw_, "zyzzyva");
  labels.push_back(cw_end_);
  Label out = kNoLabel;
  StateId end = kNoState;
  const Weight w = Walk(g, g.fst.Start(), labels, &end, &out);
  EXPECT_EQ(out, zyzzyva_);
  EXPECT_EQ(end, g.unigram);
  // Entry is the backoff from the start context down to the unigram state.
  Weight entry = Weight::One();
  for (StateId s = g.fst.Start(); s != g.unigram; s = g.fst.Arcs(s).front().nextstate) {
    entry = Times(entry, g.fst.Arcs(s).front().weight);
  }
  EXPECT_NEAR(w.Value(), Times(entry, dyn).Value(), 1e-9);
}

TEST_F(SpliceTest, EmptyDynamicVocabularyChangesNothing) {
  NGramFst g = g_;
  SpliceCharToWord(g, {}, cw_end_);
  EXPECT_EQ(g.fst.ToText(), g_.fst.ToText());
}

}  // namespace
}  // namespace fstkey
