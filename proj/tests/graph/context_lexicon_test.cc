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
#include "fstkey/graph/context_fst.h"
#include "fstkey/graph/lexicon.h"
#include "test_util.h"

namespace fstkey {
namespace {

TEST(ContextFstTest, TwoLetterAlphabetShape) {
  const KeyAlphabet a({"a", "b"});
  const WeightedFst c = BuildContextFst(a, {false, false});
  EXPECT_EQ(c.NumStates(), 3);
  EXPECT_EQ(c.TotalArcs(), 6u);
  for (StateId s = 0; s < 3; ++s) EXPECT_TRUE(c.IsFinal(s));
}

TEST(ContextFstTest, LabelsCarryLeftContext) {
  const KeyAlphabet a({"a", "b", "c"});
  const WeightedFst c = BuildContextFst(a);
  // Follow input symbols for "abc".
  std::vector<std::string> seen;
  StateId s = c.Start();
  for (const char* k : {"a", "b", "c"}) {
    for (const Arc& arc : c.Arcs(s)) {
      if (arc.olabel == a.KeyLabel(a.IndexOf(k))) {
        seen.push_back(c.InputSymbols()->Symbol(arc.ilabel));
        s = arc.nextstate;
        break;
      }
    }
  }
  EXPECT_EQ(seen, (std::vector<std::string>{"^_a", "a_b", "b_c"}));
}

TEST(ContextFstTest, CompositionPreservesAcceptorLanguage) {
  const KeyAlphabet a({"a", "b", "c"});
  const WeightedFst c = BuildContextFst(a, {false, false});
  std::mt19937 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    WeightedFst acc = testing::RandomFst(rng, 4, 3, 0.4, 0.0);
    // Make it an acceptor over key labels.
    for (StateId s = 0; s < acc.NumStates(); ++s) {
      for (Arc& arc : acc.MutableArcs(s)) arc.olabel = arc.ilabel;
    }
    std::map<std::vector<Label>, double> lang;
    for (const auto& [k, v] : EnumerateRelation(acc, 4)) lang[k.second] = v;
    std::map<std::vector<Label>, double> through;
    for (const auto& [k, v] : EnumerateRelation(Compose(c, acc), 4)) {
      // Inputs are the context labels of the outputs.
      std::vector<Label> expect;
      int prev = -1;
      for (Label l : k.second) {
        expect.push_back(a.ContextLabel(prev, l - 1));
        prev = l - 1;
      }
      EXPECT_EQ(k.first, expect);
      through[k.second] = v;
    }
    EXPECT_EQ(lang, through);
  }
}

LexiconOptions WordsOnly() {
  LexiconOptions o;
  o.literal = false;
  o.char_words = false;
  return o;
}

// (keys, word) pairs of single-word paths.
std::set<std::pair<std::string, std::string>> Language(const LexiconFst& lex,
                                                       const KeyAlphabet& a) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : EnumerateRelation(lex.fst, 7)) {
    if (k.second.size() != 1) continue;
    bool space = false;
    std::string keys;
    for (Label l : k.first) {
      if (l == a.SpaceLabel()) space = true;
      else keys += a.key(l - 1);
    }
    if (!space) out.insert({keys, lex.words->Symbol(k.second[0])});
  }
  return out;
}

TEST(LexiconTest, OptionalApostropheWords) {
  const KeyAlphabet a({"i", "v", "e", "f", "'"});
  const LexiconFst lex =
      BuildLexiconFst({{"I", {}}, {"I've", {}}, {"If", {}}}, a, WordsOnly());
  const std::set<std::pair<std::string, std::string>> expected{
      {"i", "I"}, {"i've", "I've"}, {"ive", "I've"}, {"if", "If"}};
  EXPECT_EQ(Language(lex, a), expected);
  const LexiconFst strict = BuildLexiconFst(
      {{"I", {}}, {"I've", {}}, {"If", {}}}, a,
      [] { auto o = WordsOnly(); o.optional_apostrophe = false; return o; }());
  EXPECT_FALSE(Language(strict, a).count({"ive", "I've"}));
}

TEST(LexiconTest, OptionalRepeatedKey) {
  const KeyAlphabet a({"g", "o", "l", "e"});
  const LexiconFst lex = BuildLexiconFst({{"Google", {}}}, a, WordsOnly());
  const auto lang = Language(lex, a);
  EXPECT_TRUE(lang.count({"gogle", "Google"}));
  EXPECT_TRUE(lang.count({"google", "Google"}));
  EXPECT_EQ(lang.size(), 2u);
}

TEST(LexiconTest, BypassCostsPenalty) {
  const KeyAlphabet a({"i", "v", "e", "'"});
  LexiconOptions o = WordsOnly();
  const LexiconFst lex = BuildLexiconFst({{"I've", {}}}, a, o);
  const Relation r = EnumerateRelation(lex.fst, 4);
  const Label ive = *lex.words->Find("I've");
  const std::vector<Label> full{1, 4, 2, 3}, short_form{1, 2, 3};
  EXPECT_DOUBLE_EQ(r.at({full, {ive}}), 0.0);
  EXPECT_DOUBLE_EQ(r.at({short_form, {ive}}), o.optional_penalty);
}

TEST(LexiconTest, Errors) {
  const KeyAlphabet a({"a", "b"});
  EXPECT_THROW(BuildLexiconFst({{"ab", {}}, {"ab", {"b", "a"}}}, a), ConfigError);
  EXPECT_NO_THROW(BuildLexiconFst({{"ab", {}}, {"ab", {}}}, a));
  EXPECT_THROW(BuildLexiconFst({{"abc", {}}}, a), ConfigError);
  EXPECT_THROW(BuildLexiconFst({{"<a>", {}}}, a), ConfigError);
}

TEST(LexiconTest, LiteralRunsEmitMarkerAndForbidInnerSpace) {
  const KeyAlphabet a({"a", "b"});
  const LexiconFst lex = BuildLexiconFst({{"ab", {}}}, a);
  const Label marker = *lex.words->Find(kLiteralMarker);
  for (const auto& [k, v] : EnumerateRelation(lex.fst, 3)) {
    const auto& in = k.first;
    bool literal = false;
    for (Label l : in) literal = literal || l >= a.LiteralKeyLabel(0);
    if (!literal) continue;
    // Every literal run is closed by the marker before anything else.
    bool open = false;
    for (Label o : k.second) {
      if (o == marker) {
        open = false;
      } else if (lex.words->Symbol(o).rfind("<lit>", 0) == 0) {
        open = true;
      } else {
        EXPECT_FALSE(open);
      }
    }
    EXPECT_FALSE(open);
  }
}

}  // namespace
}  // namespace fstkey
