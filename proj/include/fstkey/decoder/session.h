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

#ifndef FSTKEY_DECODER_SESSION_H_
#define FSTKEY_DECODER_SESSION_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fstkey/features/autocorrect.h"
#include "fstkey/features/completions.h"
#include "fstkey/features/post_correct.h"
#include "fstkey/features/prediction.h"
#include "fstkey/features/scored.h"
#include "fstkey/graph/decoder_graph.h"
#include "fstkey/spatial/likelihood.h"
#include "json.hpp"

namespace fstkey {

struct DecoderConfig {
  int beam = 128;
  double beam_width = 12.0;  // nats
  double deletion_penalty = 3.0;
  double insertion_penalty = 2.5;
  // Added per literal key so a word path typed on the same keys wins ties.
  double literal_offset = 0.4;
  // Spatial cost of a literal key outside the frame's top keys.
  double literal_floor = 20.0;
  int n_best = 5;
  int completions = 3;
  int predictions = 3;
  int lattice_size = 8;
  bool autocorrect = true;
  AutocorrectParams autocorrect_params;
  PostCorrectParams post_correction;
  double dynamic_weight = 0.3;
  SpatialParams spatial;
};

nlohmann::json ToJson(const DecoderConfig& c);
// Throws ConfigError on unknown keys, wrong types or bad values.
void MergeJson(const nlohmann::json& j, DecoderConfig& c);

enum class InputMode : uint8_t { kNone, kTap, kGesture };

struct DecodeUpdate {
  std::vector<Scored> candidates;  // cost-ascending
  std::optional<Scored> literal;   // tap mode
  std::vector<Scored> completions;
  bool autocorrect_preview = false;
};

struct CommitResult {
  std::string word;
  bool autocorrected = false;
  std::optional<PostCorrection> post_correction;
  std::vector<Scored> predictions;
};

nlohmann::json ToJson(const DecodeUpdate& u);
nlohmann::json ToJson(const CommitResult& r);

// One user's typing state over a shared graph. Not thread-safe; sessions on
// the same graph are independent.
class Session {
 public:
  explicit Session(std::shared_ptr<const DecoderGraph> graph, DecoderConfig config = {},
                   std::shared_ptr<PredictionCache> cache = nullptr);

  // Likelihood of a tap under this session's spatial parameters.
  Frame TapFrame(const TouchPoint& p) const;
  DecodeUpdate Tap(const TouchPoint& p) { return AdvanceTap(TapFrame(p)); }
  // Throws InputError for a frame without any finite key score or a tap in
  // the middle of a gesture word.
  DecodeUpdate AdvanceTap(const Frame& frame);
  DecodeUpdate AdvanceGestureFrame(const Frame& frame);
  // Resamples the trajectory and feeds all its frames.
  DecodeUpdate Gesture(const std::vector<TouchPoint>& trajectory);

  DecodeUpdate NBest(int n) const;
  DecodeUpdate Update() const { return NBest(config_.n_best); }

  // Ends the current word (autocorrecting in tap mode). A separator after
  // an empty word only returns predictions.
  CommitResult Commit(const std::string& separator = " ");
  // Commits a listed candidate instead of the decoder's choice. Throws
  // InputError when no candidate has that text.
  CommitResult Select(const std::string& text);
  // Drops the last frame, or the whole word for gestures. With no frames,
  // reopens the last committed word when its snapshot is still kept.
  DecodeUpdate Backspace();

  std::vector<Scored> Completions(int k) const;
  std::vector<Scored> PredictNext(int k) const;

  // Ranking-only interpolation with a user model; weight 0 or null turns it
  // off.
  void SetDynamicModel(std::shared_ptr<const DynamicNGram> dynamic, double weight);

  // Committed words, in order.
  std::vector<std::string> History() const;
  std::string Text() const;
  InputMode mode() const { return mode_; }
  size_t NumFrames() const { return frames_.size(); }
  size_t BeamSize() const { return beam_.size(); }
  // Hypotheses that consumed the last frame and survived pruning; the beam
  // adds their epsilon successors.
  size_t NumFrameHypotheses() const { return frame_hyps_; }
  // Hypothesis costs, ascending.
  std::vector<double> BeamCosts() const;
  // Current G state of the word context.
  StateId ContextState() const { return g_state_; }
  const DecoderGraph& graph() const { return *graph_; }
  const DecoderConfig& config() const { return config_; }

 private:
  struct Hyp {
    StateId state = kNoState;
    double cost = 0.0;
    double lm = 0.0;
    uint64_t out_hash = 0;
    int32_t trace = -1;
    bool transit = false;
  };
  struct Trace {
    int32_t parent;
    Label olabel;
  };
  struct Candidate {
    std::string text;
    double cost = 0.0;  // after dynamic rescoring
    double raw = 0.0;   // decoder path cost
    double lm = 0.0;
    std::vector<Label> labels;
    StateId g_after = kNoState;
    bool literal = false;
  };
  struct Committed {
    std::string text;
    LatticeEntry chosen;
    std::vector<LatticeEntry> lattice;
    StateId g_before = kNoState;
    double time_ms = 0.0;
    // Kept while the word can still be reopened.
    bool has_snapshot = false;
    std::vector<Frame> frames;
    InputMode mode = InputMode::kNone;
  };
  class Step;

  void ResetWord();
  void Advance(const Frame& frame, InputMode mode);
  void Replay();
  bool IsLiteralTrack(StateId composed) const;
  std::vector<Label> Emitted(int32_t trace) const;
  std::string TextOf(const std::vector<Label>& labels) const;
  // Distinct candidates, cost-ascending, with dynamic rescoring applied.
  std::vector<Candidate> Candidates() const;
  std::optional<Candidate> LiteralCandidate() const;
  std::string LiteralText() const;
  double LiteralCommitCost(const std::string& text) const;
  double SpatialCost(const Frame& f, int key) const;
  std::optional<std::string> PreviousWord() const;
  CommitResult CommitCandidate(const Candidate& chosen, bool autocorrected,
                               const std::vector<Candidate>& lattice);

  std::shared_ptr<const DecoderGraph> graph_;
  DecoderConfig config_;
  std::shared_ptr<PredictionCache> cache_;
  std::shared_ptr<const DynamicNGram> dynamic_;
  double dynamic_weight_ = 0.0;
  std::vector<int> layout_index_;  // alphabet key -> layout key

  StateId g_state_ = kNoState;
  std::vector<Hyp> beam_;
  size_t frame_hyps_ = 0;
  std::vector<Trace> arena_;
  std::vector<Frame> frames_;
  InputMode mode_ = InputMode::kNone;
  std::vector<Committed> history_;
};

}  // namespace fstkey

#endif  // FSTKEY_DECODER_SESSION_H_
