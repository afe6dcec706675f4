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

#ifndef FSTKEY_HARNESS_EVAL_H_
#define FSTKEY_HARNESS_EVAL_H_

#include <memory>
#include <string>
#include <vector>

#include "fstkey/decoder/session.h"
#include "fstkey/harness/synth.h"
#include "json.hpp"

namespace fstkey {

struct WordErrors {
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int reference_words = 0;

  int Total() const { return substitutions + deletions + insertions; }
  double Rate() const {
    return reference_words ? static_cast<double>(Total()) / reference_words : 0.0;
  }
  WordErrors& operator+=(const WordErrors& o);
};

// Minimum-edit word alignment of hyp against ref. Among alignments with the
// fewest edits, substitutions are preferred over deletion+insertion pairs.
WordErrors AlignWords(const std::vector<std::string>& ref, const std::vector<std::string>& hyp);

enum class EvalVariant { kLiteral, kBaseline, kFst, kFstPostCorrect };
const char* VariantName(EvalVariant v);
EvalVariant ParseVariant(const std::string& name);

struct EvalOptions {
  InputMode mode = InputMode::kTap;
  EvalVariant variant = EvalVariant::kFstPostCorrect;
  int sentences = 200;
  uint64_t seed = 42;
  NoiseParams noise;
  GestureParams gesture;
};

nlohmann::json ToJson(const EvalOptions& o);
void MergeJson(const nlohmann::json& j, EvalOptions& o);

struct CorrectionCounts {
  int applied = 0;
  int correct = 0;
  int wrong = 0;
};

struct EvalReport {
  std::string mode;
  std::string variant;
  int sentences = 0;
  WordErrors errors;
  WordErrors literal_errors;
  CorrectionCounts autocorrections;
  CorrectionCounts post_corrections;
  // Wall time of each advance call (one tap, or one whole gesture), ms.
  std::vector<double> latency_ms;
  std::vector<std::string> outputs;

  double wer() const { return errors.Rate(); }
  double literal_wer() const { return literal_errors.Rate(); }
  double LatencyPercentile(double q) const;
};

nlohmann::json ToJson(const EvalReport& r, bool with_outputs = false);

// Lines of space-separated lower-case words; blank lines skipped.
std::vector<std::vector<std::string>> ReadSentences(const std::string& path);

// The evaluation corpus: count sentences drawn from pool by a seeded
// shuffle, cycling when count exceeds the pool.
std::vector<std::vector<std::string>> DrawSentences(
    const std::vector<std::vector<std::string>>& pool, int count, uint64_t seed);

// Types every sentence with synthesized input and decodes it with the
// variant. config's post-correction switch is overridden by the variant. The
// baseline expects a graph built without look-ahead.
EvalReport Evaluate(const std::vector<std::vector<std::string>>& corpus,
                    std::shared_ptr<const DecoderGraph> graph, DecoderConfig config,
                    const EvalOptions& options);

}  // namespace fstkey

#endif  // FSTKEY_HARNESS_EVAL_H_
