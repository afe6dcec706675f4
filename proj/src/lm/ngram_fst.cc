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

#include "fstkey/lm/ngram_fst.h"

#include <algorithm>
#include <map>

#include "fstkey/errors.h"
#include "fstkey/fst/algorithms.h"
#include "fstkey/fst/binary_io.h"

namespace fstkey {
namespace {

constexpr double kLn10 = 2.302585092994046;

Weight FromLog10(double v) { return Weight(-kLn10 * v); }

}  // namespace

NGramFst NGramToFst(const NGramModel& model, const SymbolTable& words) {
  using NGram = NGramModel::NGram;
  const int order = model.order();
  const SymbolTable& vocab = model.vocab();
  std::vector<Label> map(vocab.Size(), kNoLabel);
  for (Label l = 1; l < vocab.Size(); ++l) {
    if (l == model.bos() || l == model.eos() || l == model.unk()) continue;
    if (auto id = words.Find(vocab.Symbol(l))) map[l] = *id;
  }
  auto usable_context = [&](const NGram& h) {
    for (size_t i = 0; i < h.size(); ++i) {
      const Label l = h[i];
      if (l == model.bos() && i == 0) continue;
      if (map[l] == kNoLabel) return false;
    }
    return true;
  };

  NGramFst g;
  std::map<NGram, StateId> states;
  g.unigram = g.fst.AddState();
  states[{}] = g.unigram;
  for (int n = 1; n < order; ++n) {
    for (const auto& [h, e] : model.ngrams(n)) {
      if (usable_context(h)) states[h] = g.fst.AddState();
    }
  }
  g.kinds.assign(g.fst.NumStates(), GStateKind::kWord);
  auto longest_state = [&](NGram s) {
    while (!states.count(s)) s.erase(s.begin());
    return states.at(s);
  };

  const auto bos_state = states.find({model.bos()});
  g.fst.SetStart(bos_state != states.end() ? bos_state->second : g.unigram);
  for (const auto& [h, s] : states) {
    if (!h.empty()) {
      const NGramModel::Entry* e = model.Find(h);
      g.fst.AddArc(s, {kEpsilon, kEpsilon, FromLog10(e->log10_backoff),
                       longest_state(NGram(h.begin() + 1, h.end()))});
    }
  }
  for (int n = 1; n <= order; ++n) {
    for (const auto& [ng, e] : model.ngrams(n)) {
      const NGram h(ng.begin(), ng.end() - 1);
      auto it = states.find(h);
      if (it == states.end()) continue;
      const Label w = ng.back();
      if (w == model.eos()) {
        g.fst.SetFinal(it->second, FromLog10(e.log10_prob));
        continue;
      }
      if (map[w] == kNoLabel) continue;
      NGram target = ng;
      if (static_cast<int>(target.size()) > order - 1) target.erase(target.begin());
      g.fst.AddArc(it->second, {map[w], map[w], FromLog10(e.log10_prob),
                                longest_state(target)});
    }
  }
  g.fst = ArcSort(g.fst, Tape::kInput);
  auto syms = std::make_shared<const SymbolTable>(words);
  g.fst.SetInputSymbols(syms);
  g.fst.SetOutputSymbols(syms);
  return g;
}

std::optional<GStep> GWordStep(const WeightedFst& g, StateId s, Label label) {
  Weight backoff = Weight::One();
  while (true) {
    const auto arcs = g.Arcs(s);
    auto it = std::lower_bound(arcs.begin(), arcs.end(), label,
                               [](const Arc& a, Label l) { return a.ilabel < l; });
    if (it != arcs.end() && it->ilabel == label) {
      return GStep{Times(backoff, it->weight), it->nextstate, it->olabel};
    }
    if (arcs.empty() || arcs.front().ilabel != kEpsilon) return std::nullopt;
    backoff = Times(backoff, arcs.front().weight);
    s = arcs.front().nextstate;
  }
}

Weight GFinal(const WeightedFst& g, StateId s) {
  Weight backoff = Weight::One();
  while (true) {
    if (g.IsFinal(s)) return Times(backoff, g.Final(s));
    const auto arcs = g.Arcs(s);
    if (arcs.empty() || arcs.front().ilabel != kEpsilon) return Weight::Zero();
    backoff = Times(backoff, arcs.front().weight);
    s = arcs.front().nextstate;
  }
}

Weight GSentenceCost(const WeightedFst& g, std::span<const Label> labels) {
  StateId s = g.Start();
  Weight cost = Weight::One();
  for (Label l : labels) {
    const auto step = GWordStep(g, s, l);
    if (!step) return Weight::Zero();
    cost = Times(cost, step->cost);
    s = step->next;
  }
  return Times(cost, GFinal(g, s));
}

WeightedFst PhiExpand(const WeightedFst& g) {
  WeightedFst out;
  for (StateId s = 0; s < g.NumStates(); ++s) out.AddState();
  out.SetStart(g.Start());
  out.SetInputSymbols(g.InputSymbols());
  out.SetOutputSymbols(g.OutputSymbols());
  for (StateId s = 0; s < g.NumStates(); ++s) {
    out.SetFinal(s, GFinal(g, s));
    std::map<Label, bool> seen;
    Weight backoff = Weight::One();
    StateId q = s;
    while (true) {
      const auto arcs = g.Arcs(q);
      std::map<Label, bool> here;
      for (const Arc& a : arcs) {
        if (a.ilabel == kEpsilon || seen.count(a.ilabel)) continue;
        out.AddArc(s, {a.ilabel, a.olabel, Times(backoff, a.weight), a.nextstate});
        here[a.ilabel] = true;
      }
      seen.insert(here.begin(), here.end());
      if (arcs.empty() || arcs.front().ilabel != kEpsilon) break;
      backoff = Times(backoff, arcs.front().weight);
      q = arcs.front().nextstate;
    }
  }
  return ArcSort(out, Tape::kInput);
}

void NGramFst::Write(std::ostream& os) const {
  fst.Write(os);
  io::Write<int32_t>(os, unigram);
  io::Write<uint32_t>(os, static_cast<uint32_t>(kinds.size()));
  for (GStateKind k : kinds) io::Write<uint8_t>(os, static_cast<uint8_t>(k));
}

NGramFst NGramFst::Read(std::istream& is) {
  NGramFst g;
  g.fst = WeightedFst::Read(is);
  g.unigram = io::Read<int32_t>(is);
  const uint32_t n = io::Read<uint32_t>(is);
  if (n != static_cast<uint32_t>(g.fst.NumStates())) {
    throw ParseError("state kind table does not match the machine");
  }
  g.kinds.resize(n);
  for (auto& k : g.kinds) k = static_cast<GStateKind>(io::Read<uint8_t>(is));
  return g;
}

}  // namespace fstkey
