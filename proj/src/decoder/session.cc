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

#include "fstkey/decoder/session.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>

#include "fstkey/errors.h"
#include "fstkey/json_util.h"
#include "fstkey/text.h"

namespace fstkey {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

uint64_t Mix(uint64_t h, Label l) {
  h ^= static_cast<uint64_t>(static_cast<uint32_t>(l)) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdull;
  return h ^ (h >> 31);
}

struct HypKey {
  StateId state;
  uint64_t out_hash;
  bool transit;
  bool operator==(const HypKey&) const = default;
};

struct HypKeyHash {
  size_t operator()(const HypKey& k) const {
    return static_cast<size_t>(Mix(k.out_hash, k.state) ^ (k.transit ? 0x5bd1e995u : 0u));
  }
};

nlohmann::json ToJson(const std::vector<Scored>& list) {
  nlohmann::json a = nlohmann::json::array();
  for (const Scored& s : list) a.push_back({{"text", s.text}, {"cost", s.cost}});
  return a;
}

}  // namespace

nlohmann::json ToJson(const DecoderConfig& c) {
  return {{"beam", c.beam},
          {"beam_width", c.beam_width},
          {"deletion_penalty", c.deletion_penalty},
          {"insertion_penalty", c.insertion_penalty},
          {"literal_offset", c.literal_offset},
          {"literal_floor", c.literal_floor},
          {"n_best", c.n_best},
          {"completions", c.completions},
          {"predictions", c.predictions},
          {"lattice_size", c.lattice_size},
          {"autocorrect", c.autocorrect},
          {"autocorrect_params", ToJson(c.autocorrect_params)},
          {"post_correction", ToJson(c.post_correction)},
          {"dynamic_weight", c.dynamic_weight},
          {"spatial", ToJson(c.spatial)}};
}

void MergeJson(const nlohmann::json& j, DecoderConfig& c) {
  JsonFields f(j, "decoder");
  f.Get("beam", c.beam)
      .Get("beam_width", c.beam_width)
      .Get("deletion_penalty", c.deletion_penalty)
      .Get("insertion_penalty", c.insertion_penalty)
      .Get("literal_offset", c.literal_offset)
      .Get("literal_floor", c.literal_floor)
      .Get("n_best", c.n_best)
      .Get("completions", c.completions)
      .Get("predictions", c.predictions)
      .Get("lattice_size", c.lattice_size)
      .Get("autocorrect", c.autocorrect)
      .Get("dynamic_weight", c.dynamic_weight);
  if (const auto* o = f.Object("autocorrect_params")) MergeJson(*o, c.autocorrect_params);
  if (const auto* o = f.Object("post_correction")) MergeJson(*o, c.post_correction);
  if (const auto* o = f.Object("spatial")) MergeJson(*o, c.spatial);
  f.RejectUnknown();
  if (c.beam < 1 || !(c.beam_width > 0) || c.deletion_penalty < 0 ||
      c.insertion_penalty < 0 || c.literal_offset < 0 || c.n_best < 1 || c.lattice_size < 1) {
    throw ConfigError("decoder: beam, beam_width, n_best and lattice_size must be positive "
                      "and penalties non-negative");
  }
}

nlohmann::json ToJson(const DecodeUpdate& u) {
  nlohmann::json j{{"candidates", ToJson(u.candidates)},
                   {"completions", ToJson(u.completions)},
                   {"autocorrect_preview", u.autocorrect_preview}};
  j["literal"] = u.literal ? nlohmann::json{{"text", u.literal->text}, {"cost", u.literal->cost}}
                           : nlohmann::json(nullptr);
  return j;
}

nlohmann::json ToJson(const CommitResult& r) {
  nlohmann::json j{{"committed", r.word},
                   {"autocorrected", r.autocorrected},
                   {"predictions", ToJson(r.predictions)}};
  if (r.post_correction) {
    j["post_correction"] = {{"position", r.post_correction->position},
                            {"old", r.post_correction->old_text},
                            {"new", r.post_correction->new_text},
                            {"gain", r.post_correction->gain}};
  } else {
    j["post_correction"] = nullptr;
  }
  return j;
}

Session::Session(std::shared_ptr<const DecoderGraph> graph, DecoderConfig config,
                 std::shared_ptr<PredictionCache> cache)
    : graph_(std::move(graph)), config_(std::move(config)), cache_(std::move(cache)) {
  if (!cache_) cache_ = std::make_shared<PredictionCache>();
  const KeyAlphabet& a = graph_->alphabet();
  for (int i = 0; i < a.NumKeys(); ++i) layout_index_.push_back(a.LayoutIndex(i));
  g_state_ = graph_->g().fst.Start();
  ResetWord();
}

Frame Session::TapFrame(const TouchPoint& p) const {
  return TapLikelihood(graph_->layout(), p, config_.spatial);
}

void Session::SetDynamicModel(std::shared_ptr<const DynamicNGram> dynamic, double weight) {
  dynamic_ = std::move(dynamic);
  dynamic_weight_ = weight;
}

double Session::SpatialCost(const Frame& f, int key) const {
  const int li = layout_index_[key];
  if (li < 0 || li >= static_cast<int>(f.scores.size())) return kInf;
  return f.scores[li].Value();
}

bool Session::IsLiteralTrack(StateId composed) const {
  const LexTrack t = graph_->StateInfo(graph_->lazy().Tuple(composed).left).track;
  return t == LexTrack::kLiteral || t == LexTrack::kLiteralEnd;
}

void Session::ResetWord() {
  arena_.clear();
  frames_.clear();
  mode_ = InputMode::kNone;
  LazyComposedGraph& lazy = graph_->lazy();
  Hyp start;
  start.state = lazy.FindOrAdd({graph_->cl().Start(), g_state_, 0});
  beam_ = {start};
  // Epsilon moves out of the word start (into the spelling track).
  std::vector<Hyp> hyps = beam_;
  std::unordered_map<HypKey, int, HypKeyHash> index{{{start.state, 0, false}, 0}};
  std::vector<int> work{0};
  while (!work.empty()) {
    const Hyp h = hyps[work.back()];
    work.pop_back();
    for (const ComposedArc& a : lazy.Expand(h.state)) {
      if (a.ilabel != kEpsilon || a.olabel != kEpsilon) continue;
      const HypKey k{a.nextstate, 0, false};
      if (index.count(k)) continue;
      Hyp n = h;
      n.state = a.nextstate;
      n.cost += a.weight.Value();
      n.lm += a.right_weight.Value();
      index[k] = static_cast<int>(hyps.size());
      work.push_back(static_cast<int>(hyps.size()));
      hyps.push_back(n);
    }
  }
  beam_ = std::move(hyps);
}

void Session::Advance(const Frame& frame, InputMode mode) {
  bool finite = false;
  for (int k = 0; k < static_cast<int>(layout_index_.size()); ++k) {
    finite = finite || std::isfinite(SpatialCost(frame, k));
  }
  if (!finite) throw InputError("frame has no finite key score");
  if (mode_ != InputMode::kNone && mode_ != mode) {
    throw InputError("taps and gestures cannot be mixed within one word");
  }
  const bool first = frames_.empty();
  const bool tap = mode == InputMode::kTap;
  frames_.push_back(frame);
  mode_ = mode;

  const DecoderGraph& g = *graph_;
  LazyComposedGraph& lazy = g.lazy();
  int literal_key = -1;
  double literal_cost = 0.0;
  if (tap) {
    literal_key = g.alphabet().FromLayoutIndex(LiteralKeyOrNearest(g.layout(), frame));
    literal_cost = literal_key >= 0 ? SpatialCost(frame, literal_key) : kInf;
    if (!std::isfinite(literal_cost)) literal_cost = config_.literal_floor;
    literal_cost += config_.literal_offset;
  }

  std::vector<Hyp> next;
  std::unordered_map<HypKey, int, HypKeyHash> index;
  // Adds or improves a hypothesis; returns its index, or -1 if nothing
  // changed.
  auto relax = [&](const Hyp& from, StateId s, double cost, double lm, Label o1, Label o2,
                   bool transit) -> int {
    uint64_t hash = from.out_hash;
    if (o1) hash = Mix(hash, o1);
    if (o2) hash = Mix(hash, o2);
    const HypKey key{s, hash, transit};
    auto it = index.find(key);
    if (it != index.end() && !(cost < next[it->second].cost)) return -1;
    int32_t trace = from.trace;
    if (o1) {
      arena_.push_back({trace, o1});
      trace = static_cast<int32_t>(arena_.size()) - 1;
    }
    if (o2) {
      arena_.push_back({trace, o2});
      trace = static_cast<int32_t>(arena_.size()) - 1;
    }
    const Hyp h{s, cost, lm, hash, trace, transit};
    if (it != index.end()) {
      next[it->second] = h;
      return it->second;
    }
    const int i = static_cast<int>(next.size());
    index.emplace(key, i);
    next.push_back(h);
    return i;
  };

  for (const Hyp& h : beam_) {
    const std::vector<ComposedArc>& arcs = lazy.Expand(h.state);
    for (const ComposedArc& a : arcs) {
      const InputKind kind = g.InputKindOf(a.ilabel);
      if (kind == InputKind::kKey) {
        const int key = g.InputKey(a.ilabel);
        if (tap) {
          const double sc = SpatialCost(frame, key);
          if (std::isfinite(sc)) {
            relax(h, a.nextstate, h.cost + a.weight.Value() + sc,
                  h.lm + a.right_weight.Value(), a.olabel, kEpsilon, false);
          }
          // Skip this arc, then consume the frame on the next one.
          for (const ComposedArc& b : lazy.Expand(a.nextstate)) {
            if (g.InputKindOf(b.ilabel) != InputKind::kKey) continue;
            const double sb = SpatialCost(frame, g.InputKey(b.ilabel));
            if (!std::isfinite(sb)) continue;
            relax(h, b.nextstate,
                  h.cost + a.weight.Value() + config_.deletion_penalty + b.weight.Value() + sb,
                  h.lm + a.right_weight.Value() + b.right_weight.Value(), a.olabel, b.olabel,
                  false);
          }
        } else {
          const Weight w = AlignedCost(frame, layout_index_[key], config_.spatial);
          if (w.IsFinite()) {
            relax(h, a.nextstate, h.cost + a.weight.Value() + w.Value(),
                  h.lm + a.right_weight.Value(), a.olabel, kEpsilon, false);
          }
        }
      } else if (kind == InputKind::kLiteralKey && tap && g.InputKey(a.ilabel) == literal_key) {
        relax(h, a.nextstate, h.cost + a.weight.Value() + literal_cost,
              h.lm + a.right_weight.Value(), a.olabel, kEpsilon, false);
      }
    }
    if (tap) {
      if (!IsLiteralTrack(h.state)) {
        relax(h, h.state, h.cost + config_.insertion_penalty, h.lm, kEpsilon, kEpsilon, false);
      }
    } else if (!first) {
      relax(h, h.state, h.cost + TransitCost(frame, config_.spatial).Value(), h.lm, kEpsilon,
            kEpsilon, true);
      const int last = g.StateInfo(lazy.Tuple(h.state).left).last_key;
      if (!h.transit && last >= 0) {
        const Weight w = AlignedCost(frame, layout_index_[last], config_.spatial);
        if (w.IsFinite()) {
          relax(h, h.state, h.cost + w.Value(), h.lm, kEpsilon, kEpsilon, false);
        }
      }
    }
  }
  if (next.empty()) {
    // Nothing matched: keep the old hypotheses as if the frame were noise.
    for (Hyp h : beam_) {
      h.cost += config_.insertion_penalty;
      next.push_back(h);
      index.emplace(HypKey{h.state, h.out_hash, h.transit}, static_cast<int>(next.size()) - 1);
    }
  }

  // Prune the frame-consuming hypotheses; literal-track ones are always kept
  // in tap mode. Their epsilon successors are added afterwards unpruned, so a
  // word end is never lost to the cheaper trie state it came from.
  std::vector<Hyp> kept, protect;
  for (const Hyp& h : next) {
    (tap && IsLiteralTrack(h.state) ? protect : kept).push_back(h);
  }
  auto order = [](const Hyp& a, const Hyp& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.state != b.state) return a.state < b.state;
    if (a.out_hash != b.out_hash) return a.out_hash < b.out_hash;
    return a.transit < b.transit;
  };
  std::sort(kept.begin(), kept.end(), order);
  size_t n = 0;
  while (n < kept.size() && n < static_cast<size_t>(config_.beam) &&
         kept[n].cost <= kept.front().cost + config_.beam_width) {
    ++n;
  }
  kept.resize(n);
  kept.insert(kept.end(), protect.begin(), protect.end());
  std::sort(kept.begin(), kept.end(), order);
  next = std::move(kept);
  frame_hyps_ = next.size();
  index.clear();
  for (int i = 0; i < static_cast<int>(next.size()); ++i) {
    index.emplace(HypKey{next[i].state, next[i].out_hash, next[i].transit}, i);
  }

  // Epsilon closure, cheapest first.
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (int i = 0; i < static_cast<int>(next.size()); ++i) queue.emplace(next[i].cost, i);
  while (!queue.empty()) {
    const auto [cost, i] = queue.top();
    queue.pop();
    if (cost != next[i].cost) continue;
    const Hyp h = next[i];
    for (const ComposedArc& a : lazy.Expand(h.state)) {
      if (a.ilabel != kEpsilon) continue;
      const int j = relax(h, a.nextstate, h.cost + a.weight.Value(),
                          h.lm + a.right_weight.Value(), a.olabel, kEpsilon, h.transit);
      if (j >= 0) queue.emplace(next[j].cost, j);
    }
  }

  std::sort(next.begin(), next.end(), order);
  beam_ = std::move(next);
}

DecodeUpdate Session::AdvanceTap(const Frame& frame) {
  Advance(frame, InputMode::kTap);
  return Update();
}

DecodeUpdate Session::AdvanceGestureFrame(const Frame& frame) {
  Advance(frame, InputMode::kGesture);
  return Update();
}

DecodeUpdate Session::Gesture(const std::vector<TouchPoint>& trajectory) {
  if (mode_ == InputMode::kTap) {
    throw InputError("taps and gestures cannot be mixed within one word");
  }
  for (const Frame& f : GestureFrames(graph_->layout(), trajectory, config_.spatial)) {
    Advance(f, InputMode::kGesture);
  }
  return Update();
}

std::vector<Label> Session::Emitted(int32_t trace) const {
  std::vector<Label> out;
  for (; trace >= 0; trace = arena_[trace].parent) out.push_back(arena_[trace].olabel);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Session::TextOf(const std::vector<Label>& labels) const {
  std::vector<std::string> tokens;
  std::string run;
  for (Label l : labels) {
    switch (graph_->OutputKindOf(l)) {
      case OutputKind::kLiteral:
        run += graph_->WordText(l);
        break;
      case OutputKind::kMarker:
        tokens.push_back(run);
        run.clear();
        break;
      case OutputKind::kWord:
      case OutputKind::kDynamicWord:
        tokens.push_back(graph_->WordText(l));
        break;
      default:
        break;
    }
  }
  if (!run.empty()) tokens.push_back(run);
  return Join(tokens, " ");
}

std::optional<std::string> Session::PreviousWord() const {
  if (history_.empty()) return std::nullopt;
  return history_.back().text;
}

std::vector<Session::Candidate> Session::Candidates() const {
  const DecoderGraph& g = *graph_;
  const std::optional<std::string> previous = PreviousWord();
  std::map<std::string, Candidate> best;
  for (const Hyp& h : beam_) {
    const ComposeTuple t = g.lazy().Tuple(h.state);
    if (!g.cl().IsFinal(t.left) || !g.g().IsWordState(t.right)) continue;
    if (mode_ == InputMode::kGesture && h.transit) continue;
    std::vector<Label> labels = Emitted(h.trace);
    if (labels.empty() && !frames_.empty()) continue;
    Candidate c;
    c.text = TextOf(labels);
    c.raw = h.cost + g.cl().Final(t.left).Value();
    c.cost = c.raw;
    c.lm = h.lm;
    c.g_after = t.right;
    c.literal = IsLiteralTrack(h.state);
    if (dynamic_ && dynamic_weight_ != 0 && labels.size() == 1) {
      if (auto d = dynamic_->Score(c.text, previous)) {
        c.cost += dynamic_weight_ * (d->Value() - h.lm);
      }
    }
    c.labels = std::move(labels);
    auto [it, inserted] = best.try_emplace(c.text, c);
    if (!inserted && (c.cost < it->second.cost ||
                      (c.cost == it->second.cost && c.labels < it->second.labels))) {
      it->second = std::move(c);
    }
  }
  std::vector<Candidate> out;
  for (auto& [text, c] : best) out.push_back(std::move(c));
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.cost < b.cost;
  });
  return out;
}

std::string Session::LiteralText() const {
  std::string text;
  for (const Frame& f : frames_) {
    const int k = graph_->alphabet().FromLayoutIndex(LiteralKeyOrNearest(graph_->layout(), f));
    if (k >= 0) text += graph_->alphabet().key(k);
  }
  return text;
}

double Session::LiteralCommitCost(const std::string& text) const {
  double spatial = 0.0;
  for (const Frame& f : frames_) {
    const int k = graph_->alphabet().FromLayoutIndex(LiteralKeyOrNearest(graph_->layout(), f));
    const double c = k >= 0 ? SpatialCost(f, k) : kInf;
    spatial += std::isfinite(c) ? c : config_.literal_floor;
  }
  return spatial + config_.autocorrect_params.literal_scale * graph_->char_lm().Score(text);
}

std::optional<Session::Candidate> Session::LiteralCandidate() const {
  if (mode_ != InputMode::kTap || frames_.empty()) return std::nullopt;
  const DecoderGraph& g = *graph_;
  Candidate c;
  c.text = LiteralText();
  c.literal = true;
  c.raw = kInf;
  for (const Hyp& h : beam_) {
    const ComposeTuple t = g.lazy().Tuple(h.state);
    if (g.StateInfo(t.left).track != LexTrack::kLiteralEnd || !g.cl().IsFinal(t.left)) continue;
    if (h.cost < c.raw) {
      c.raw = h.cost;
      c.lm = h.lm;
      c.labels = Emitted(h.trace);
      c.g_after = t.right;
    }
  }
  if (!std::isfinite(c.raw)) {
    // Graph without a literal track.
    c.raw = LiteralCommitCost(c.text);
    c.g_after = g.g().unigram;
    if (auto l = g.words().Find(c.text); l && g.OutputKindOf(*l) == OutputKind::kWord) {
      if (auto step = GWordStep(g.g().fst, g_state_, *l)) {
        c.labels = {*l};
        c.g_after = step->next;
        c.lm = step->cost.Value();
      }
    }
  }
  c.cost = c.raw;
  return c;
}

DecodeUpdate Session::NBest(int n) const {
  DecodeUpdate u;
  const std::vector<Candidate> all = Candidates();
  for (const Candidate& c : all) {
    if (static_cast<int>(u.candidates.size()) >= n) break;
    u.candidates.push_back({c.text, c.cost});
  }
  if (auto lit = LiteralCandidate()) {
    u.literal = Scored{lit->text, lit->cost};
    if (config_.autocorrect) {
      std::vector<Scored> list;
      for (const Candidate& c : all) list.push_back({c.text, c.cost});
      const auto l = graph_->words().Find(lit->text);
      const bool is_word = l && graph_->OutputKindOf(*l) == OutputKind::kWord;
      u.autocorrect_preview =
          DecideAutocorrect(list, {lit->text, LiteralCommitCost(lit->text)}, is_word,
                            config_.autocorrect_params)
              .corrected;
    }
  }
  if (mode_ == InputMode::kTap && !frames_.empty()) u.completions = Completions(config_.completions);
  return u;
}

std::vector<Scored> Session::Completions(int k) const {
  if (mode_ != InputMode::kTap || frames_.empty()) return {};
  std::vector<CompletionSource> sources;
  for (const Hyp& h : beam_) {
    const ComposeTuple t = graph_->lazy().Tuple(h.state);
    sources.push_back({t.left, t.right, h.cost, h.cost - h.lm, Emitted(h.trace)});
  }
  return fstkey::Completions(*graph_, sources, k);
}

std::vector<Scored> Session::PredictNext(int k) const {
  std::vector<Scored> list = fstkey::PredictNext(*graph_, g_state_, k, cache_.get());
  if (dynamic_ && dynamic_weight_ != 0) {
    MergeDynamic(list, *dynamic_, PreviousWord(), dynamic_weight_, k,
                 [&](const std::string& w) -> std::optional<double> {
                   const auto l = graph_->words().Find(w);
                   if (!l || graph_->OutputKindOf(*l) != OutputKind::kWord) return std::nullopt;
                   const auto step = GWordStep(graph_->g().fst, g_state_, *l);
                   if (!step) return std::nullopt;
                   return step->cost.Value();
                 });
  }
  return list;
}

CommitResult Session::Commit(const std::string& separator) {
  (void)separator;
  if (frames_.empty()) return {"", false, std::nullopt, PredictNext(config_.predictions)};
  const std::vector<Candidate> cands = Candidates();
  if (mode_ == InputMode::kTap) {
    const std::optional<Candidate> lit = LiteralCandidate();
    std::string text = lit->text;
    bool corrected = false;
    if (config_.autocorrect) {
      std::vector<Scored> list;
      for (const Candidate& c : cands) list.push_back({c.text, c.cost});
      const auto l = graph_->words().Find(text);
      const bool is_word = l && graph_->OutputKindOf(*l) == OutputKind::kWord;
      const AutocorrectResult r = DecideAutocorrect(
          list, {text, LiteralCommitCost(text)}, is_word, config_.autocorrect_params);
      text = r.text;
      corrected = r.corrected;
    }
    for (const Candidate& c : cands) {
      if (c.text == text) return CommitCandidate(c, corrected, cands);
    }
    return CommitCandidate(*lit, corrected, cands);
  }
  if (cands.empty()) {
    ResetWord();
    return {"", false, std::nullopt, PredictNext(config_.predictions)};
  }
  return CommitCandidate(cands.front(), false, cands);
}

CommitResult Session::Select(const std::string& text) {
  const std::vector<Candidate> cands = Candidates();
  for (const Candidate& c : cands) {
    if (c.text == text) return CommitCandidate(c, false, cands);
  }
  if (auto lit = LiteralCandidate(); lit && lit->text == text) {
    return CommitCandidate(*lit, false, cands);
  }
  throw InputError("no candidate '" + text + "'");
}

CommitResult Session::CommitCandidate(const Candidate& chosen, bool autocorrected,
                                      const std::vector<Candidate>& lattice) {
  const WeightedFst& g = graph_->g().fst;
  auto entry = [](const Candidate& c) {
    return LatticeEntry{c.text, c.labels, c.raw - c.lm, c.lm, c.g_after};
  };
  Committed rec;
  rec.text = chosen.text;
  rec.chosen = entry(chosen);
  for (const Candidate& c : lattice) {
    if (static_cast<int>(rec.lattice.size()) >= config_.lattice_size) break;
    rec.lattice.push_back(entry(c));
  }
  rec.g_before = g_state_;
  rec.time_ms = frames_.back().point.t;
  rec.has_snapshot = true;
  rec.frames = frames_;
  rec.mode = mode_;

  CommitResult result;
  result.word = rec.text;
  result.autocorrected = autocorrected;
  if (!history_.empty() && history_.back().has_snapshot) {
    Committed& prev = history_.back();
    const auto rev = BestRevision(*graph_, prev.g_before, prev.chosen, prev.lattice,
                                  rec.chosen.labels, 1, rec.time_ms - prev.time_ms,
                                  config_.post_correction);
    if (rev) {
      result.post_correction = PostCorrection{static_cast<int>(history_.size()) - 1, prev.text,
                                              prev.lattice[rev->index].text, rev->gain};
      prev.chosen = prev.lattice[rev->index];
      if (auto w = LabelsCost(g, prev.g_before, prev.chosen.labels)) {
        prev.chosen.lm = w->first;
        prev.chosen.g_after = w->second;
      }
      prev.text = prev.chosen.text;
      // The new word's context changed; reprice its lattice.
      rec.g_before = prev.chosen.g_after;
      auto reprice = [&](LatticeEntry& e) {
        if (auto w = LabelsCost(g, rec.g_before, e.labels)) {
          e.lm = w->first;
          e.g_after = w->second;
        }
      };
      reprice(rec.chosen);
      for (LatticeEntry& e : rec.lattice) reprice(e);
    }
  }
  history_.push_back(std::move(rec));
  const size_t keep = static_cast<size_t>(std::max(config_.post_correction.window_words, 1));
  for (size_t i = 0; i + keep < history_.size(); ++i) {
    Committed& old = history_[i];
    old.has_snapshot = false;
    old.frames.clear();
    old.lattice.clear();
  }
  g_state_ = history_.back().chosen.g_after;
  ResetWord();
  result.predictions = PredictNext(config_.predictions);
  return result;
}

void Session::Replay() {
  const std::vector<Frame> frames = frames_;
  const InputMode mode = mode_;
  ResetWord();
  for (const Frame& f : frames) Advance(f, mode);
}

DecodeUpdate Session::Backspace() {
  if (!frames_.empty()) {
    if (mode_ == InputMode::kGesture) {
      frames_.clear();
    } else {
      frames_.pop_back();
    }
    Replay();
  } else if (!history_.empty() && history_.back().has_snapshot) {
    Committed rec = std::move(history_.back());
    history_.pop_back();
    g_state_ = rec.g_before;
    frames_ = std::move(rec.frames);
    mode_ = rec.mode;
    Replay();
  }
  return Update();
}

std::vector<std::string> Session::History() const {
  std::vector<std::string> out;
  for (const Committed& c : history_) out.push_back(c.text);
  return out;
}

std::string Session::Text() const { return Join(History(), " "); }

std::vector<double> Session::BeamCosts() const {
  std::vector<double> out;
  for (const Hyp& h : beam_) out.push_back(h.cost);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fstkey
