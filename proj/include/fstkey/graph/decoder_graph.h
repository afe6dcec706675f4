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

#ifndef FSTKEY_GRAPH_DECODER_GRAPH_H_
#define FSTKEY_GRAPH_DECODER_GRAPH_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "fstkey/fst/label_interval_set.h"
#include "fstkey/fst/lazy_compose.h"
#include "fstkey/graph/alphabet.h"
#include "fstkey/graph/context_fst.h"
#include "fstkey/graph/lexicon.h"
#include "fstkey/lm/char_lm.h"
#include "fstkey/lm/dynamic_ngram.h"
#include "fstkey/lm/ngram_fst.h"
#include "fstkey/lm/ngram_model.h"
#include "fstkey/lm/splice.h"
#include "fstkey/spatial/layout.h"
#include "json.hpp"

namespace fstkey {

struct GraphOptions {
  LexiconOptions lexicon;
  LiteralGrammarParams literal;
  CharLMParams char_lm;
  bool lookahead = true;
  // Added to the dynamic model's unigram cost on spliced words.
  double dynamic_word_penalty = 0.0;
};

nlohmann::json ToJson(const GraphOptions& options);
// Overrides the fields present in j. Throws ConfigError on unknown keys or
// wrong types.
void MergeJson(const nlohmann::json& j, GraphOptions& options);

// What a cl input label stands for.
enum class InputKind : uint8_t { kNone, kKey, kLiteralKey, kSpace };

// What a word-table label stands for.
enum class OutputKind : uint8_t {
  kNone,
  kWord,         // lexicon word
  kLiteral,      // one literal character
  kMarker,       // end of a literal run
  kCharWord,     // one spelled character
  kCharWordEnd,
  kDynamicWord,  // word added from the user model
};

struct ClStateInfo {
  LexTrack track = LexTrack::kBoundary;
  int last_key = -1;  // key index of the left context, -1 word-initially
};

// The keyboard decoding graph (C o L) o G. C o L is static with per-state
// look-ahead label sets; G is attached lazily.
class DecoderGraph {
 public:
  // Words of the model missing from the lexicon are ignored; lexicon words
  // missing from the model get their unigram through <unk>-free backoff (no
  // arc), so they can only be produced if the model lists them.
  static std::shared_ptr<const DecoderGraph> Build(
      const KeyboardLayout& layout, const std::vector<LexiconEntry>& lexicon,
      const NGramModel& model, const GraphOptions& options = {});

  // A graph sharing this one's cl and base G with the user's words spliced
  // in. Words already in the vocabulary or not typeable are skipped with a
  // warning on stderr.
  std::shared_ptr<const DecoderGraph> WithDynamicVocabulary(
      const DynamicNGram& dynamic) const;

  void Write(std::ostream& os) const;
  static std::shared_ptr<const DecoderGraph> Read(std::istream& is);
  void Save(const std::string& path) const;
  static std::shared_ptr<const DecoderGraph> Load(const std::string& path);

  const KeyboardLayout& layout() const { return *layout_; }
  const KeyAlphabet& alphabet() const { return alphabet_; }
  const SymbolTable& words() const { return *words_; }
  const WeightedFst& cl() const { return *cl_; }
  const NGramFst& g() const { return *g_; }
  const CharLM& char_lm() const { return *char_lm_; }
  const GraphOptions& options() const { return options_; }
  LazyComposedGraph& lazy() const { return *lazy_; }
  const LabelIntervalSet& Intervals(StateId cl_state) const {
    return (*intervals_)[cl_state];
  }

  const ClStateInfo& StateInfo(StateId cl_state) const { return (*state_info_)[cl_state]; }
  InputKind InputKindOf(Label cl_ilabel) const;
  // Key index of a key or literal-key input label.
  int InputKey(Label cl_ilabel) const;
  OutputKind OutputKindOf(Label word) const {
    return word >= 0 && word < static_cast<Label>(output_kinds_.size())
               ? output_kinds_[word]
               : OutputKind::kNone;
  }
  // Key index of a literal or character-word label.
  int OutputKey(Label word) const { return output_keys_[word]; }
  Label LiteralLabel(int key) const { return literal_labels_[key]; }
  Label MarkerLabel() const { return marker_; }
  // Text of a word label; literal characters give just the key code.
  std::string WordText(Label word) const;

  // Lexicon words sorted by their unigram cost at the unigram state.
  const std::vector<std::pair<double, Label>>& UnigramList() const {
    return *unigram_list_;
  }

  const std::string& metadata() const { return metadata_; }

 private:
  DecoderGraph() = default;
  void Finish();      // derived tables + lazy graph
  void BuildBaseG(const NGramModel& model);

  std::shared_ptr<const KeyboardLayout> layout_;
  KeyAlphabet alphabet_;
  GraphOptions options_;
  std::shared_ptr<const SymbolTable> words_;
  std::shared_ptr<const WeightedFst> cl_;
  std::shared_ptr<const std::vector<LabelIntervalSet>> intervals_;
  std::shared_ptr<const std::vector<ClStateInfo>> state_info_;
  std::shared_ptr<const NGramFst> g_base_;
  std::shared_ptr<const NGramFst> g_;
  std::shared_ptr<const CharLM> char_lm_;
  std::shared_ptr<LazyComposedGraph> lazy_;
  std::vector<OutputKind> output_kinds_;
  std::vector<int> output_keys_;
  std::vector<Label> literal_labels_;
  Label marker_ = kNoLabel;
  std::shared_ptr<const std::vector<std::pair<double, Label>>> unigram_list_;
  std::string metadata_;
};

}  // namespace fstkey

#endif  // FSTKEY_GRAPH_DECODER_GRAPH_H_
