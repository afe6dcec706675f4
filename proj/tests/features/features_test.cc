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
#include <fstream>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "decoder/decoder_fixture.h"
#include "fstkey/features/autocorrect.h"
#include "fstkey/features/completions.h"
#include "fstkey/features/post_correct.h"
#include "fstkey/features/prediction.h"

namespace fstkey {
namespace {

using testing::Center;
using testing::HasText;
using testing::QwertyGraph;
using testing::TapText;

std::vector<std::string> Texts(const std::vector<Scored>& list) {
  std::vector<std::string> out;
  for (const Scored& s : list) out.push_back(s.text);
  return out;
}

// Taps text with every key pushed by (dx, dy) for the listed positions.
DecodeUpdate TapShifted(Session& s, const std::string& text, double t0,
                        const std::map<size_t, std::pair<double, double>>& shift = {}) {
  DecodeUpdate u;
  double t = t0;
  const auto chars = SplitUtf8(text);
  for (size_t i = 0; i < chars.size(); ++i) {
    auto it = shift.find(i);
    const double dx = it == shift.end() ? 0 : it->second.first;
    const double dy = it == shift.end() ? 0 : it->second.second;
    u = s.Tap(Center(chars[i], t += 200, dx, dy));
  }
  return u;
}

// --- autocorrect -----------------------------------------------------------

TEST(AutocorrectTest, ValidWordLiteralIsKeptUnderSmallMargin) {
  const std::vector<Scored> cands{{"fat", 10.0}, {"far", 11.0}};
  const auto r = DecideAutocorrect(cands, {"far", 14.0}, true, {});
  EXPECT_EQ(r.text, "far");
  EXPECT_FALSE(r.corrected);
  EXPECT_DOUBLE_EQ(r.gain, 1.0);
}

TEST(AutocorrectTest, OutOfVocabularyLiteralIsCorrected) {
  const std::vector<Scored> cands{{"this", 6.0}, {"tjis", 15.0}};
  const auto r = DecideAutocorrect(cands, {"tjis", 15.0}, false, {});
  EXPECT_EQ(r.text, "this");
  EXPECT_TRUE(r.corrected);
}

TEST(AutocorrectTest, LiteralOnTopIsNeverCorrected) {
  const std::vector<Scored> cands{{"this", 1.0}, {"thus", 9.0}};
  const auto r = DecideAutocorrect(cands, {"this", 50.0}, false, {});
  EXPECT_EQ(r.text, "this");
  EXPECT_FALSE(r.corrected);
}

TEST(AutocorrectTest, RaisingValidWordPenaltyNeverCorrectsMore) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> cost(0.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Scored> cands{{"a", cost(rng)}, {"b", cost(rng)}, {"c", cost(rng)}};
    std::sort(cands.begin(), cands.end(), [](auto& x, auto& y) { return x.cost < y.cost; });
    const Scored literal{"b", cost(rng) + 2.0};
    bool corrected_before = true;
    for (double rho : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      AutocorrectParams p;
      p.valid_word_penalty = rho;
      const bool c = DecideAutocorrect(cands, literal, true, p).corrected;
      EXPECT_FALSE(c && !corrected_before);
      corrected_before = c;
    }
  }
}

TEST(AutocorrectTest, SessionKeepsValidFarOverFat) {
  const auto g = QwertyGraph({"you're", "far", "fat"},
                             {{"you're", "far"}, {"you're", "fat"}, {"fat"}});
  Session s(g);
  TapText(s, "you're");
  s.Commit();
  // 'r' tapped toward 't'.
  const DecodeUpdate u = TapShifted(s, "far", 2000, {{2, {14, 0}}});
  ASSERT_TRUE(u.literal);
  EXPECT_EQ(u.literal->text, "far");
  const CommitResult r = s.Commit();
  EXPECT_EQ(r.word, "far");
  EXPECT_FALSE(r.autocorrected);
}

// --- completions -----------------------------------------------------------

TEST(CompletionsTest, PrefixOfWordOffersIt) {
  Session s(QwertyGraph({"keyboard", "key", "kettle"}, {{"keyboard"}, {"key"}, {"kettle"}}));
  const DecodeUpdate u = TapText(s, "keyb");
  EXPECT_TRUE(HasText(u.completions, "keyboard"));
}

TEST(CompletionsTest, ApostropheWordsReachableAfterI) {
  Session s(QwertyGraph({"I", "I've", "If"}, {{"I"}, {"I've"}, {"If"}}));
  TapText(s, "i");
  const auto texts = Texts(s.Completions(10));
  EXPECT_EQ(std::set<std::string>(texts.begin(), texts.end()),
            (std::set<std::string>{"I", "I've", "If"}));
}

TEST(CompletionsTest, NoneInGestureMode) {
  Session s(QwertyGraph({"pit", "pot"}, {{"pit"}, {"pot"}}));
  s.Gesture(testing::Swipe("pt"));
  EXPECT_TRUE(s.Completions(5).empty());
}

std::vector<std::string> FrequentWords(size_t n) {
  std::vector<std::string> out;
  for (const auto& [w, c] : ReadWordList(FSTKEY_DATA_DIR "/words.txt")) {
    if (w.find('\'') != std::string::npos) continue;
    out.push_back(w);
    if (out.size() == n) break;
  }
  return out;
}

TEST(CompletionsTest, EqualsVocabularyScan) {
  const std::vector<std::string> words = FrequentWords(1000);
  std::mt19937 rng(4);
  std::vector<std::vector<std::string>> corpus;
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  for (int i = 0; i < 400; ++i) {
    std::vector<std::string> sent;
    for (int j = 0; j < 6; ++j) sent.push_back(words[std::min(pick(rng), pick(rng))]);
    corpus.push_back(sent);
  }
  GraphOptions o;
  o.lexicon.optional_apostrophe = false;
  o.lexicon.optional_repeated_key = false;
  const NGramModel model = testing::ModelFor(corpus, words, 2);
  const auto g = DecoderGraph::Build(testing::Qwerty(), testing::Entries(words), model, o);
  DecoderConfig c;
  c.beam = 1000000;
  c.beam_width = 200.0;
  c.insertion_penalty = 1e4;
  c.deletion_penalty = 1e4;
  const int k = 5;
  std::normal_distribution<double> jitter(0.0, 6.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::string& target = words[pick(rng)];
    const auto keys = SplitUtf8(target);
    const size_t n = 1 + trial % std::min<size_t>(4, keys.size());
    Session s(g, c);
    std::vector<Frame> frames;
    for (size_t i = 0; i < n; ++i) {
      frames.push_back(s.TapFrame(Center(keys[i], 200.0 * (i + 1), jitter(rng), jitter(rng))));
      s.AdvanceTap(frames.back());
    }
    // Oracle: every word at least n keys long, priced by its first n keys
    // under the frames plus its probability after <s>.
    std::vector<std::tuple<double, Label, std::string>> scan;
    for (const std::string& w : words) {
      const auto wk = SplitUtf8(w);
      if (wk.size() < n) continue;
      double cost = 0;
      for (size_t i = 0; i < n; ++i) {
        cost += frames[i].scores[*testing::Qwerty().IndexOf(wk[i])].Value();
      }
      if (!std::isfinite(cost)) continue;
      const Label ctx[] = {model.bos()};
      cost += model.Cost(ctx, *model.vocab().Find(w));
      scan.emplace_back(cost, *g->words().Find(w), w);
    }
    std::sort(scan.begin(), scan.end());
    const auto got = s.Completions(k);
    ASSERT_EQ(got.size(), std::min<size_t>(k, scan.size())) << target << " " << n;
    for (size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].text, std::get<2>(scan[i])) << target << " " << n << " #" << i;
      EXPECT_NEAR(got[i].cost, std::get<0>(scan[i]), 1e-9);
    }
  }
}

// --- prediction ------------------------------------------------------------

std::vector<std::pair<double, Label>> BruteForce(const DecoderGraph& g, const NGramModel& m,
                                                 std::vector<Label> ctx, int k) {
  std::vector<std::pair<double, Label>> all;
  for (Label w = 1; w < static_cast<Label>(m.vocab().Size()); ++w) {
    if (w == m.bos() || w == m.eos() || w == m.unk()) continue;
    const auto l = g.words().Find(m.vocab().Symbol(w));
    if (!l) continue;
    all.emplace_back(m.Cost(ctx, w), *l);
  }
  std::sort(all.begin(), all.end());
  if (all.size() > static_cast<size_t>(k)) all.resize(k);
  return all;
}

void ExpectSameList(const DecoderGraph& g, const std::vector<Scored>& got,
                    const std::vector<std::pair<double, Label>>& want, const std::string& what) {
  ASSERT_EQ(got.size(), want.size()) << what;
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].text, g.WordText(want[i].second)) << what << " #" << i;
    EXPECT_NEAR(got[i].cost, want[i].first, 1e-9) << what << " #" << i;
  }
}

TEST(PredictionTest, UnigramStateGivesTopUnigrams) {
  const std::vector<std::string> words{"the", "cat", "sat", "on", "mat", "a", "dog"};
  const NGramModel m = testing::ModelFor(
      {{"the", "cat", "sat", "on", "the", "mat"}, {"a", "dog"}, {"the", "dog"}}, words, 2);
  const auto g = DecoderGraph::Build(testing::Qwerty(), testing::Entries(words), m);
  ExpectSameList(*g, PredictNext(*g, g->g().unigram, 3), BruteForce(*g, m, {}, 3), "unigram");
}

TEST(PredictionTest, GoodLuckAfterGood) {
  const std::vector<std::string> words{"good", "luck", "food", "is", "day", "morning"};
  const std::vector<std::vector<std::string>> corpus{
      {"good", "luck"}, {"good", "luck"}, {"good", "luck"}, {"good", "day"},
      {"good", "morning"}, {"food", "is", "good"}};
  const NGramModel m = testing::ModelFor(corpus, words, 3);
  const auto g = DecoderGraph::Build(testing::Qwerty(), testing::Entries(words), m);
  Session s(g);
  TapText(s, "good");
  const CommitResult r = s.Commit();
  EXPECT_EQ(r.word, "good");
  ASSERT_FALSE(r.predictions.empty());
  EXPECT_EQ(r.predictions[0].text, "luck");
  const Label ctx[] = {m.bos(), *m.vocab().Find("good")};
  ExpectSameList(*g, r.predictions, BruteForce(*g, m, {ctx[0], ctx[1]}, 3), "good");
}

TEST(PredictionTest, EqualsBackoffConditionalForEveryContext) {
  const std::vector<std::string> words = FrequentWords(120);
  std::mt19937 rng(6);
  std::uniform_int_distribution<size_t> pick(0, 40);  // skewed to few words
  std::vector<std::vector<std::string>> corpus;
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> sent;
    for (int j = 0; j < 5; ++j) sent.push_back(words[pick(rng) * (j % 2 + 1)]);
    corpus.push_back(sent);
  }
  const NGramModel m = testing::ModelFor(corpus, words, 3);
  const auto g = DecoderGraph::Build(testing::Qwerty(), testing::Entries(words), m);
  const WeightedFst& fst = g->g().fst;
  const int k = 5;
  auto state_after = [&](StateId s, Label model_word) {
    const auto l = g->words().Find(m.vocab().Symbol(model_word));
    return GWordStep(fst, s, *l)->next;
  };
  int checked = 0;
  for (const auto& [ngram, e] : m.ngrams(1)) {
    const Label a = ngram[0];
    if (a == m.eos() || a == m.unk()) continue;
    if (a == m.bos()) {
      ExpectSameList(*g, PredictNext(*g, fst.Start(), k), BruteForce(*g, m, {a}, k), "<s>");
      ++checked;
      continue;
    }
    const StateId sa = state_after(g->g().unigram, a);
    ExpectSameList(*g, PredictNext(*g, sa, k), BruteForce(*g, m, {a}, k), "1-ctx");
    ++checked;
  }
  for (const auto& [ngram, e] : m.ngrams(2)) {
    if (ngram[1] == m.eos() || ngram[1] == m.unk() || ngram[0] == m.unk()) continue;
    const StateId s0 = ngram[0] == m.bos() ? fst.Start() : state_after(g->g().unigram, ngram[0]);
    const StateId s = state_after(s0, ngram[1]);
    ExpectSameList(*g, PredictNext(*g, s, k), BruteForce(*g, m, {ngram[0], ngram[1]}, k), "2-ctx");
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(PredictionTest, CacheIsTransparent) {
  const std::vector<std::string> words = FrequentWords(200);
  std::vector<std::vector<std::string>> corpus;
  for (size_t i = 0; i + 4 < words.size(); i += 3) {
    corpus.push_back({words[i], words[i + 1], words[i + 4]});
  }
  const NGramModel m = testing::ModelFor(corpus, words, 3);
  const auto g = DecoderGraph::Build(testing::Qwerty(), testing::Entries(words), m);
  PredictionCache cache(8);
  for (int round = 0; round < 2; ++round) {
    for (StateId s = 0; s < g->g().fst.NumStates(); ++s) {
      if (!g->g().IsWordState(s)) continue;
      EXPECT_EQ(PredictNext(*g, s, 4, &cache), PredictNext(*g, s, 4)) << s;
    }
  }
  EXPECT_LE(cache.Size(), 8u);
  const auto a = PredictNext(*g, g->g().unigram, 3, &cache);
  const size_t hits = cache.hits();
  EXPECT_EQ(PredictNext(*g, g->g().unigram, 3, &cache), a);
  EXPECT_EQ(cache.hits(), hits + 1);
}

// --- post-correction -------------------------------------------------------

TEST(PostCorrectTest, WholeLotOfSomething) {
  const std::vector<std::string> words{"it", "meant", "a", "while", "whole", "lot", "of",
                                       "something", "for"};
  const std::vector<std::vector<std::string>> corpus{
      {"it", "meant", "a", "while"}, {"for", "a", "while"}, {"a", "while"},
      {"a", "whole", "lot", "of", "something"}, {"a", "whole", "lot"},
      {"a", "whole", "lot", "of", "it"}, {"a", "lot", "of", "something"}};
  const auto g = QwertyGraph(words, corpus, {}, 2);
  Session s(g);
  double t = 0;
  for (const std::string w : {"it", "meant", "a"}) {
    TapText(s, w, t);
    s.Commit();
    t += 2000;
  }
  // The third key lands between i and o, a little nearer i.
  TapShifted(s, "while", t, {{2, {7, 0}}});
  EXPECT_EQ(s.Commit().word, "while");
  t += 2000;
  TapText(s, "lot", t);
  const CommitResult r = s.Commit();
  ASSERT_TRUE(r.post_correction);
  EXPECT_EQ(r.post_correction->old_text, "while");
  EXPECT_EQ(r.post_correction->new_text, "whole");
  EXPECT_EQ(r.post_correction->position, 3);
  EXPECT_GT(r.post_correction->gain, s.config().post_correction.min_gain);
  for (const std::string w : {"of", "something"}) {
    t += 2000;
    TapText(s, w, t);
    s.Commit();
  }
  EXPECT_EQ(s.Text(), "it meant a whole lot of something");
}

std::shared_ptr<const DecoderGraph> GoodLuckGraph() {
  const std::vector<std::string> words{"food", "good", "luck", "is", "she", "likes", "the"};
  const std::vector<std::vector<std::string>> corpus{
      {"good", "luck"}, {"good", "luck"}, {"good", "luck"}, {"good", "luck"},
      {"good", "luck"}, {"good", "luck"}, {"food", "is", "good"}, {"food", "is", "good"}, {"food"}, {"food"}, {"food"},
      {"she", "likes", "the", "food"}};
  return QwertyGraph(words, corpus, {}, 2);
}

TEST(PostCorrectTest, FoodLuckBecomesGoodLuck) {
  Session s(GoodLuckGraph());
  // The first tap falls between f and g, nearer f.
  TapShifted(s, "food", 0, {{0, {9, 0}}});
  const CommitResult first = s.Commit();
  EXPECT_EQ(first.word, "food");
  EXPECT_FALSE(first.autocorrected);
  TapText(s, "luck", 2000);
  const CommitResult r = s.Commit();
  ASSERT_TRUE(r.post_correction);
  EXPECT_EQ(r.post_correction->new_text, "good");
  EXPECT_EQ(s.Text(), "good luck");
}

TEST(PostCorrectTest, NotOutsideTheWindowOrBelowGain) {
  {
    Session s(GoodLuckGraph());
    TapText(s, "food");
    s.Commit();
    TapText(s, "luck", 20000);  // 20 s later
    EXPECT_FALSE(s.Commit().post_correction);
    EXPECT_EQ(s.Text(), "food luck");
  }
  {
    DecoderConfig c;
    c.post_correction.min_gain = 50.0;
    Session s(GoodLuckGraph(), c);
    TapText(s, "food");
    s.Commit();
    TapText(s, "luck", 2000);
    EXPECT_FALSE(s.Commit().post_correction);
  }
  {
    DecoderConfig c;
    c.post_correction.enabled = false;
    Session s(GoodLuckGraph(), c);
    TapText(s, "food");
    s.Commit();
    TapText(s, "luck", 2000);
    EXPECT_FALSE(s.Commit().post_correction);
  }
}

TEST(PostCorrectTest, ConfidentUnrelatedWordIsLeftAlone) {
  const auto g = QwertyGraph({"the", "cat", "she", "likes"},
                             {{"the", "cat"}, {"she", "likes", "the", "cat"}});
  Session s(g);
  TapText(s, "she");
  s.Commit();
  TapText(s, "cat", 2000);
  EXPECT_FALSE(s.Commit().post_correction);
  EXPECT_EQ(s.Text(), "she cat");
}

TEST(PostCorrectTest, RevisionMatchesJointRescoringOracle) {
  const std::vector<std::string> words = FrequentWords(60);
  std::mt19937 rng(12);
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  std::vector<std::vector<std::string>> corpus;
  for (int i = 0; i < 200; ++i) corpus.push_back({words[pick(rng) / 3], words[pick(rng)]});
  const NGramModel m = testing::ModelFor(corpus, words, 2);
  const auto g = DecoderGraph::Build(testing::Qwerty(), testing::Entries(words), m);
  const WeightedFst& fst = g->g().fst;
  std::uniform_real_distribution<double> spatial(0.0, 6.0);
  PostCorrectParams p;
  int fired = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const StateId before = fst.Start();
    std::vector<LatticeEntry> lattice;
    for (int i = 0; i < 8; ++i) {
      const std::string& w = words[pick(rng)];
      const Label l = *g->words().Find(w);
      const auto step = GWordStep(fst, before, l);
      lattice.push_back({w, {l}, spatial(rng), step->cost.Value(), step->next});
    }
    const LatticeEntry committed = lattice[0];
    const std::string next = words[pick(rng)];
    const Label next_label = *g->words().Find(next);
    const auto rev = BestRevision(*g, before, committed, lattice, {&next_label, 1}, 1, 500, p);
    auto joint = [&](const LatticeEntry& e) {
      const Label w = *m.vocab().Find(e.text);
      const Label ctx1[] = {m.bos()};
      const Label ctx2[] = {w};
      return e.spatial + m.Cost(ctx1, w) + m.Cost(ctx2, *m.vocab().Find(next));
    };
    const double old_joint = joint(committed);
    double best = old_joint;
    for (const LatticeEntry& e : lattice) {
      if (e.text != committed.text) best = std::min(best, joint(e));
    }
    if (old_joint - best > p.min_gain + 1e-9) {
      ASSERT_TRUE(rev) << trial;
      EXPECT_NEAR(rev->gain, old_joint - best, 1e-9);
      EXPECT_LT(joint(lattice[rev->index]), old_joint);
      ++fired;
    } else if (old_joint - best < p.min_gain - 1e-9) {
      EXPECT_FALSE(rev) << trial;
    }
  }
  EXPECT_GT(fired, 10);
}

// --- dynamic rescoring -----------------------------------------------------

TEST(DynamicRescoreTest, EmptyModelIsNeutral) {
  const auto g = QwertyGraph({"this", "thus", "that"}, {{"this"}, {"thus"}, {"that"}});
  Session a(g), b(g);
  b.SetDynamicModel(std::make_shared<DynamicNGram>(), 0.3);
  EXPECT_EQ(ToJson(TapText(a, "thus")).dump(), ToJson(TapText(b, "thus")).dump());
  EXPECT_EQ(ToJson(a.Commit()).dump(), ToJson(b.Commit()).dump());
}

TEST(DynamicRescoreTest, ObservedWordRanksNoWorse) {
  const auto g = QwertyGraph({"pit", "pot", "put"}, {{"pit"}, {"pot"}, {"put"}});
  auto rank = [](const DecodeUpdate& u, const std::string& w) {
    for (size_t i = 0; i < u.candidates.size(); ++i) {
      if (u.candidates[i].text == w) return i;
    }
    return u.candidates.size();
  };
  for (const std::string w : {"pit", "pot", "put"}) {
    Session plain(g);
    const size_t before = rank(TapShifted(plain, "pot", 0, {{1, {-18, 0}}}), w);
    auto dyn = std::make_shared<DynamicNGram>();
    for (int i = 0; i < 10; ++i) dyn->Observe({w}, i);
    Session biased(g);
    biased.SetDynamicModel(dyn, 0.3);
    const size_t after = rank(TapShifted(biased, "pot", 0, {{1, {-18, 0}}}), w);
    EXPECT_LE(after, before) << w;
  }
}

TEST(DynamicRescoreTest, ShiftFollowsInterpolationFormula) {
  const auto g = QwertyGraph({"pit", "pot", "put"},
                             {{"pit"}, {"pot"}, {"pot"}, {"put"}, {"put"}, {"put"}});
  auto dyn = std::make_shared<DynamicNGram>();
  dyn->Observe({"pit", "pit", "pot"}, 0);
  const double w = 0.3;
  Session plain(g), biased(g);
  biased.SetDynamicModel(dyn, w);
  const DecodeUpdate a = TapShifted(plain, "pot", 0, {{1, {-18, 0}}});
  const DecodeUpdate b = TapShifted(biased, "pot", 0, {{1, {-18, 0}}});
  int checked = 0;
  for (const std::string word : {"pit", "pot", "put"}) {
    const auto ia = std::find_if(a.candidates.begin(), a.candidates.end(),
                                 [&](const Scored& s) { return s.text == word; });
    const auto ib = std::find_if(b.candidates.begin(), b.candidates.end(),
                                 [&](const Scored& s) { return s.text == word; });
    ASSERT_NE(ia, a.candidates.end());
    ASSERT_NE(ib, b.candidates.end());
    const double lm =
        GWordStep(g->g().fst, g->g().fst.Start(), *g->words().Find(word))->cost.Value();
    const auto d = dyn->Score(word, std::nullopt);
    const double expect = d ? ia->cost + w * (d->Value() - lm) : ia->cost;
    EXPECT_NEAR(ib->cost, expect, 1e-9) << word;
    ++checked;
  }
  EXPECT_EQ(checked, 3);
}

TEST(DynamicRescoreTest, PredictionsMergeUserWords) {
  const std::vector<std::string> words{"good", "luck", "day", "zebra"};
  const auto g = QwertyGraph(words, {{"good", "luck"}, {"good", "day"}, {"zebra"}});
  auto dyn = std::make_shared<DynamicNGram>();
  for (int i = 0; i < 10; ++i) dyn->Observe({"good", "zebra"}, i);
  Session s(g);
  s.SetDynamicModel(dyn, 0.3);
  TapText(s, "good");
  const CommitResult r = s.Commit();
  EXPECT_TRUE(HasText(r.predictions, "zebra"));
}

}  // namespace
}  // namespace fstkey
