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

#include "fstkey/graph/decoder_graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fstkey/errors.h"
#include "fstkey/fst/algorithms.h"
#include "fstkey/fst/binary_io.h"
#include "fstkey/json_util.h"
#include "fstkey/text.h"

namespace fstkey {

nlohmann::json ToJson(const GraphOptions& o) {
  return {
      {"lexicon",
       {{"optional_apostrophe", o.lexicon.optional_apostrophe},
        {"optional_repeated_key", o.lexicon.optional_repeated_key},
        {"optional_space", o.lexicon.optional_space},
        {"optional_penalty", o.lexicon.optional_penalty},
        {"literal", o.lexicon.literal},
        {"char_words", o.lexicon.char_words}}},
      {"literal",
       {{"entry_cost", o.literal.entry_cost}, {"marker_cost", o.literal.marker_cost}}},
      {"char_lm",
       {{"lambda3", o.char_lm.lambda3},
        {"lambda2", o.char_lm.lambda2},
        {"lambda1", o.char_lm.lambda1},
        {"lambda0", o.char_lm.lambda0},
        {"unknown_cost", o.char_lm.unknown_cost}}},
      {"lookahead", o.lookahead},
      {"dynamic_word_penalty", o.dynamic_word_penalty},
  };
}

void MergeJson(const nlohmann::json& j, GraphOptions& o) {
  JsonFields f(j, "graph");
  f.Get("lookahead", o.lookahead).Get("dynamic_word_penalty", o.dynamic_word_penalty);
  if (const auto* l = f.Object("lexicon")) {
    JsonFields g(*l, "graph.lexicon");
    g.Get("optional_apostrophe", o.lexicon.optional_apostrophe)
        .Get("optional_repeated_key", o.lexicon.optional_repeated_key)
        .Get("optional_space", o.lexicon.optional_space)
        .Get("optional_penalty", o.lexicon.optional_penalty)
        .Get("literal", o.lexicon.literal)
        .Get("char_words", o.lexicon.char_words)
        .RejectUnknown();
  }
  if (const auto* l = f.Object("literal")) {
    JsonFields g(*l, "graph.literal");
    g.Get("entry_cost", o.literal.entry_cost)
        .Get("marker_cost", o.literal.marker_cost)
        .RejectUnknown();
  }
  if (const auto* l = f.Object("char_lm")) {
    JsonFields g(*l, "graph.char_lm");
    g.Get("lambda3", o.char_lm.lambda3)
        .Get("lambda2", o.char_lm.lambda2)
        .Get("lambda1", o.char_lm.lambda1)
        .Get("lambda0", o.char_lm.lambda0)
        .Get("unknown_cost", o.char_lm.unknown_cost)
        .RejectUnknown();
  }
  f.RejectUnknown();
}

std::shared_ptr<const DecoderGraph> DecoderGraph::Build(
    const KeyboardLayout& layout, const std::vector<LexiconEntry>& lexicon,
    const NGramModel& model, const GraphOptions& options) {
  std::shared_ptr<DecoderGraph> g(new DecoderGraph());
  g->layout_ = std::make_shared<const KeyboardLayout>(layout);
  g->alphabet_ = KeyAlphabet(layout);
  g->options_ = options;

  // C o L with each state's origin.
  const WeightedFst c = BuildContextFst(g->alphabet_);
  LexiconFst lex = BuildLexiconFst(lexicon, g->alphabet_, options.lexicon);
  std::vector<ComposeTuple> prov;
  const WeightedFst composed = Compose(c, lex.fst, {&prov});
  std::vector<StateId> old_to_new;
  WeightedFst cl = Connect(composed, &old_to_new);
  auto info = std::make_shared<std::vector<ClStateInfo>>(cl.NumStates());
  for (StateId o = 0; o < composed.NumStates(); ++o) {
    if (old_to_new[o] == kNoState) continue;
    (*info)[old_to_new[o]] = {lex.tracks[prov[o].right], prov[o].left - 1};
  }

  // Reachable words per state, computed without the arcs back into the
  // between-words states so each state only sees the words it can finish.
  WeightedFst view;
  for (StateId s = 0; s < cl.NumStates(); ++s) view.AddState();
  for (StateId s = 0; s < cl.NumStates(); ++s) {
    view.SetFinal(s, cl.Final(s));
    for (const Arc& a : cl.Arcs(s)) {
      if ((*info)[a.nextstate].track != LexTrack::kBoundary) view.AddArc(s, a);
    }
  }
  const StateId super = view.AddState();
  view.SetStart(super);
  for (StateId s = 0; s < cl.NumStates(); ++s) {
    if ((*info)[s].track == LexTrack::kBoundary) {
      view.AddArc(super, {kEpsilon, kEpsilon, Weight::One(), s});
    }
  }
  view.SetOutputSymbols(lex.words);
  ReachableLabels reach = ComputeReachableLabels(view);
  reach.sets.pop_back();

  RelabelTape(cl, Tape::kOutput, reach.relabel);
  g->words_ = std::make_shared<const SymbolTable>(lex.words->Permuted(reach.relabel));
  cl = ArcSort(cl, Tape::kOutput);
  cl.SetOutputSymbols(g->words_);
  g->cl_ = std::make_shared<const WeightedFst>(std::move(cl));
  g->intervals_ =
      std::make_shared<const std::vector<LabelIntervalSet>>(std::move(reach.sets));
  g->state_info_ = info;

  // Character model over the lexicon, each word weighted by its unigram
  // probability.
  std::vector<std::pair<std::string, double>> weighted;
  const std::vector<Label> no_context;
  for (const LexiconEntry& e : lexicon) {
    const auto id = model.vocab().Find(e.word);
    const Label l = id ? *id : model.unk();
    double p = l == kNoLabel ? 0 : std::pow(10.0, model.Log10Prob(no_context, l));
    if (!(p > 0)) p = 1e-9;
    const auto keys = e.keys.empty() ? KeysForWord(e.word, g->alphabet_) : e.keys;
    std::string text;
    for (const auto& k : keys) text += k;
    weighted.emplace_back(text, p);
  }
  g->char_lm_ = std::make_shared<const CharLM>(
      CharLM::Train(g->alphabet_.keys(), weighted, options.char_lm));
  g->BuildBaseG(model);
  g->Finish();
  return g;
}

void DecoderGraph::BuildBaseG(const NGramModel& model) {
  NGramFst g = NGramToFst(model, *words_);
  std::vector<Label> lit;
  for (const std::string& k : alphabet_.keys()) {
    lit.push_back(*words_->Find(LiteralWordSymbol(k)));
  }
  if (options_.lexicon.literal) {
    SpliceLiteralGrammar(g, *char_lm_, lit, *words_->Find(kLiteralMarker),
                         options_.literal);
  }
  g_base_ = std::make_shared<const NGramFst>(std::move(g));
  g_ = g_base_;
}

void DecoderGraph::Finish() {
  const Label base_words = cl_->OutputSymbols()->Size();
  output_kinds_.assign(words_->Size(), OutputKind::kNone);
  output_keys_.assign(words_->Size(), -1);
  literal_labels_.assign(alphabet_.NumKeys(), kNoLabel);
  for (Label l = 1; l < words_->Size(); ++l) {
    const std::string& s = words_->Symbol(l);
    OutputKind kind = OutputKind::kWord;
    if (l >= base_words) {
      kind = OutputKind::kDynamicWord;
    } else if (s == kLiteralMarker) {
      kind = OutputKind::kMarker;
      marker_ = l;
    } else if (s == kCharWordEnd) {
      kind = OutputKind::kCharWordEnd;
    } else if (s.rfind("<lit>", 0) == 0) {
      kind = OutputKind::kLiteral;
      output_keys_[l] = alphabet_.IndexOf(s.substr(5));
      literal_labels_[output_keys_[l]] = l;
    } else if (s.rfind("<cw>", 0) == 0) {
      kind = OutputKind::kCharWord;
      output_keys_[l] = alphabet_.IndexOf(s.substr(4));
    }
    output_kinds_[l] = kind;
  }
  auto list = std::make_shared<std::vector<std::pair<double, Label>>>();
  for (const Arc& a : g_->fst.Arcs(g_->unigram)) {
    const OutputKind k = OutputKindOf(a.ilabel);
    if (k == OutputKind::kWord || k == OutputKind::kDynamicWord) {
      list->emplace_back(a.weight.Value(), a.ilabel);
    }
  }
  std::sort(list->begin(), list->end());
  unigram_list_ = list;
  lazy_ = std::make_shared<LazyComposedGraph>(
      cl_, std::shared_ptr<const WeightedFst>(g_, &g_->fst), intervals_,
      LazyComposeOptions{options_.lookahead});
  metadata_ = nlohmann::json{{"format", "fstk-bundle-1"},
                             {"layout_id", layout_->id()},
                             {"options", ToJson(options_)},
                             {"words", words_->Size() - 1},
                             {"cl_states", cl_->NumStates()},
                             {"cl_arcs", cl_->TotalArcs()},
                             {"g_states", g_->fst.NumStates()},
                             {"g_arcs", g_->fst.TotalArcs()}}
                  .dump();
}

std::shared_ptr<const DecoderGraph> DecoderGraph::WithDynamicVocabulary(
    const DynamicNGram& dynamic) const {
  std::shared_ptr<DecoderGraph> g(new DecoderGraph(*this));
  auto words = std::make_shared<SymbolTable>(*words_);
  std::vector<CharWordEntry> entries;
  for (const std::string& w : dynamic.Vocabulary()) {
    if (words_->Contains(w)) {
      std::cerr << "warning: dynamic word '" << w
                << "' is already in the vocabulary; skipped\n";
      continue;
    }
    std::vector<std::string> keys;
    try {
      keys = KeysForWord(w, alphabet_);
    } catch (const ConfigError& e) {
      std::cerr << "warning: " << e.what() << "; skipped\n";
      continue;
    }
    CharWordEntry e;
    for (const std::string& k : keys) e.chars.push_back(*words->Find(CharWordSymbol(k)));
    e.word = words->AddSymbol(w);
    e.cost = Times(*dynamic.UnigramScore(w), Weight(options_.dynamic_word_penalty));
    entries.push_back(std::move(e));
  }
  NGramFst spliced = *g_base_;
  SpliceCharToWord(spliced, entries, *words->Find(kCharWordEnd));
  spliced.fst.SetOutputSymbols(words);
  g->words_ = words;
  g->g_ = std::make_shared<const NGramFst>(std::move(spliced));
  g->Finish();
  return g;
}

InputKind DecoderGraph::InputKindOf(Label l) const {
  const int k = alphabet_.NumKeys();
  if (l <= 0) return InputKind::kNone;
  if (l < alphabet_.ContextSpaceLabel()) return InputKind::kKey;
  if (l == alphabet_.ContextSpaceLabel()) return InputKind::kSpace;
  if (l <= alphabet_.ContextSpaceLabel() + k) return InputKind::kLiteralKey;
  return InputKind::kNone;
}

int DecoderGraph::InputKey(Label l) const {
  const int k = alphabet_.NumKeys();
  switch (InputKindOf(l)) {
    case InputKind::kKey: return (l - 1) % k;
    case InputKind::kLiteralKey: return l - alphabet_.ContextSpaceLabel() - 1;
    default: return -1;
  }
}

std::string DecoderGraph::WordText(Label word) const {
  switch (OutputKindOf(word)) {
    case OutputKind::kLiteral:
    case OutputKind::kCharWord:
      return alphabet_.key(output_keys_[word]);
    case OutputKind::kMarker:
    case OutputKind::kCharWordEnd:
    case OutputKind::kNone:
      return "";
    default:
      return words_->Symbol(word);
  }
}

namespace {
constexpr char kBundleMagic[] = "FSTKB1";
}  // namespace

void DecoderGraph::Write(std::ostream& os) const {
  io::WriteMagic(os, kBundleMagic);
  io::WriteString(os, metadata_);
  io::WriteString(os, layout_->ToJson().dump());
  words_->Write(os);
  cl_->Write(os);
  io::Write<uint32_t>(os, static_cast<uint32_t>(state_info_->size()));
  for (const ClStateInfo& s : *state_info_) {
    io::Write<uint8_t>(os, static_cast<uint8_t>(s.track));
    io::Write<int32_t>(os, s.last_key);
  }
  io::Write<uint32_t>(os, static_cast<uint32_t>(intervals_->size()));
  for (const LabelIntervalSet& set : *intervals_) {
    io::Write<uint32_t>(os, static_cast<uint32_t>(set.NumIntervals()));
    for (const auto& [b, e] : set.Intervals()) {
      io::Write<int32_t>(os, b);
      io::Write<int32_t>(os, e);
    }
  }
  g_base_->Write(os);
  char_lm_->Write(os);
}

std::shared_ptr<const DecoderGraph> DecoderGraph::Read(std::istream& is) {
  io::ExpectMagic(is, kBundleMagic);
  std::shared_ptr<DecoderGraph> g(new DecoderGraph());
  nlohmann::json meta, layout;
  try {
    meta = nlohmann::json::parse(io::ReadString(is));
    layout = nlohmann::json::parse(io::ReadString(is));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph bundle metadata: ") + e.what());
  }
  if (meta.value("format", "") != "fstk-bundle-1") {
    throw ParseError("unsupported graph bundle format");
  }
  MergeJson(meta.at("options"), g->options_);
  g->layout_ = std::make_shared<const KeyboardLayout>(KeyboardLayout::FromJson(layout));
  g->alphabet_ = KeyAlphabet(*g->layout_);
  g->words_ = std::make_shared<const SymbolTable>(SymbolTable::Read(is));
  auto cl = std::make_shared<WeightedFst>(WeightedFst::Read(is));
  cl->SetOutputSymbols(g->words_);
  g->cl_ = cl;
  const uint32_t n = io::Read<uint32_t>(is);
  if (n != static_cast<uint32_t>(cl->NumStates())) {
    throw ParseError("graph bundle: state table size mismatch");
  }
  auto info = std::make_shared<std::vector<ClStateInfo>>(n);
  for (auto& s : *info) {
    s.track = static_cast<LexTrack>(io::Read<uint8_t>(is));
    s.last_key = io::Read<int32_t>(is);
  }
  g->state_info_ = info;
  if (io::Read<uint32_t>(is) != n) throw ParseError("graph bundle: interval table size mismatch");
  auto intervals = std::make_shared<std::vector<LabelIntervalSet>>(n);
  for (auto& set : *intervals) {
    const uint32_t k = io::Read<uint32_t>(is);
    for (uint32_t i = 0; i < k; ++i) {
      const Label b = io::Read<int32_t>(is);
      const Label e = io::Read<int32_t>(is);
      set.InsertInterval(b, e);
    }
  }
  g->intervals_ = intervals;
  g->g_base_ = std::make_shared<const NGramFst>(NGramFst::Read(is));
  g->g_ = g->g_base_;
  g->char_lm_ = std::make_shared<const CharLM>(CharLM::Read(is));
  g->Finish();
  return g;
}

void DecoderGraph::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  Write(out);
}

std::shared_ptr<const DecoderGraph> DecoderGraph::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open graph bundle " + path);
  return Read(in);
}

}  // namespace fstkey
