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

#include "fstkey/harness/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include "fstkey/errors.h"
#include "fstkey/json_util.h"
#include "fstkey/text.h"

namespace fstkey {

WordErrors& WordErrors::operator+=(const WordErrors& o) {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  reference_words += o.reference_words;
  return *this;
}

WordErrors AlignWords(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1));
  for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      d[i][j] = std::min({d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1), d[i - 1][j] + 1,
                          d[i][j - 1] + 1});
    }
  }
  WordErrors e;
  e.reference_words = static_cast<int>(n);
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++e.substitutions;
      --i, --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++e.deletions;
      --i;
    } else {
      ++e.insertions;
      --j;
    }
  }
  return e;
}

const char* VariantName(EvalVariant v) {
  switch (v) {
    case EvalVariant::kLiteral:
      return "literal";
    case EvalVariant::kBaseline:
      return "baseline";
    case EvalVariant::kFst:
      return "fst";
    case EvalVariant::kFstPostCorrect:
      return "fst_pc";
  }
  return "?";
}

EvalVariant ParseVariant(const std::string& name) {
  for (EvalVariant v : {EvalVariant::kLiteral, EvalVariant::kBaseline, EvalVariant::kFst,
                        EvalVariant::kFstPostCorrect}) {
    if (name == VariantName(v)) return v;
  }
  throw ConfigError("unknown decoder variant '" + name + "' (literal, baseline, fst, fst_pc)");
}

namespace {

const char* ModeName(InputMode m) { return m == InputMode::kGesture ? "gesture" : "tap"; }

InputMode ParseMode(const std::string& s) {
  if (s == "tap") return InputMode::kTap;
  if (s == "gesture") return InputMode::kGesture;
  throw ConfigError("unknown input mode '" + s + "' (tap, gesture)");
}

}  // namespace

nlohmann::json ToJson(const EvalOptions& o) {
  return {{"mode", ModeName(o.mode)},       {"variant", VariantName(o.variant)},
          {"sentences", o.sentences},       {"seed", o.seed},
          {"noise", ToJson(o.noise)},       {"gesture", ToJson(o.gesture)}};
}

void MergeJson(const nlohmann::json& j, EvalOptions& o) {
  JsonFields f(j, "eval");
  std::string mode = ModeName(o.mode), variant = VariantName(o.variant);
  f.Get("mode", mode).Get("variant", variant).Get("sentences", o.sentences).Get("seed", o.seed);
  if (const auto* n = f.Object("noise")) MergeJson(*n, o.noise);
  if (const auto* g = f.Object("gesture")) MergeJson(*g, o.gesture);
  f.RejectUnknown();
  o.mode = ParseMode(mode);
  o.variant = ParseVariant(variant);
  if (o.sentences < 1) throw ConfigError("eval.sentences must be positive");
}

double EvalReport::LatencyPercentile(double q) const {
  if (latency_ms.empty()) return 0.0;
  std::vector<double> v = latency_ms;
  std::sort(v.begin(), v.end());
  const size_t rank = static_cast<size_t>(std::ceil(q * v.size()));
  return v[std::clamp<size_t>(rank, 1, v.size()) - 1];
}

nlohmann::json ToJson(const EvalReport& r, bool with_outputs) {
  auto errors = [](const WordErrors& e) {
    return nlohmann::json{{"wer", e.Rate()},
                          {"substitutions", e.substitutions},
                          {"deletions", e.deletions},
                          {"insertions", e.insertions},
                          {"reference_words", e.reference_words}};
  };
  auto counts = [](const CorrectionCounts& c) {
    return nlohmann::json{{"applied", c.applied}, {"correct", c.correct}, {"wrong", c.wrong}};
  };
  nlohmann::json j{{"mode", r.mode},
                   {"variant", r.variant},
                   {"sentences", r.sentences},
                   {"errors", errors(r.errors)},
                   {"literal_errors", errors(r.literal_errors)},
                   {"autocorrections", counts(r.autocorrections)},
                   {"post_corrections", counts(r.post_corrections)},
                   {"latency_ms",
                    {{"p50", r.LatencyPercentile(0.5)},
                     {"p95", r.LatencyPercentile(0.95)},
                     {"max", r.LatencyPercentile(1.0)},
                     {"count", r.latency_ms.size()}}}};
  if (with_outputs) j["outputs"] = r.outputs;
  return j;
}

std::vector<std::vector<std::string>> ReadSentences(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto words = SplitWords(AsciiLower(line));
    if (!words.empty()) out.push_back(std::move(words));
  }
  return out;
}

std::vector<std::vector<std::string>> DrawSentences(
    const std::vector<std::vector<std::string>>& pool, int count, uint64_t seed) {
  if (pool.empty()) throw InputError("empty sentence pool");
  std::vector<size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<std::string>> out;
  for (int i = 0; i < count; ++i) out.push_back(pool[order[i % order.size()]]);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double Ms(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

struct SentenceRun {
  const std::vector<std::string>& ref;
  EvalReport& report;
  Session* session = nullptr;

  void Commit() {
    const size_t pos = session->History().size();
    const CommitResult r = session->Commit();
    if (r.word.empty()) return;
    if (r.autocorrected) {
      ++report.autocorrections.applied;
      ++(pos < ref.size() && ref[pos] == r.word ? report.autocorrections.correct
                                                : report.autocorrections.wrong);
    }
    if (r.post_correction) {
      const size_t at = static_cast<size_t>(r.post_correction->position);
      ++report.post_corrections.applied;
      ++(at < ref.size() && ref[at] == r.post_correction->new_text
             ? report.post_corrections.correct
             : report.post_corrections.wrong);
    }
  }
};

}  // namespace

EvalReport Evaluate(const std::vector<std::vector<std::string>>& corpus,
                    std::shared_ptr<const DecoderGraph> graph, DecoderConfig config,
                    const EvalOptions& options) {
  const KeyboardLayout& layout = graph->layout();
  config.post_correction.enabled = options.variant == EvalVariant::kFstPostCorrect;
  EvalReport report;
  report.mode = ModeName(options.mode);
  report.variant = VariantName(options.variant);
  report.sentences = static_cast<int>(corpus.size());
  for (size_t si = 0; si < corpus.size(); ++si) {
    const auto& ref = corpus[si];
    std::seed_seq seq{options.seed, static_cast<uint64_t>(si)};
    std::mt19937_64 rng(seq);
    Session session(graph, config);
    SentenceRun run{ref, report, &session};
    std::vector<std::string> literal;
    const bool decode = options.variant != EvalVariant::kLiteral;

    if (options.mode == InputMode::kGesture) {
      double t = 0;
      for (const std::string& w : ref) {
        const auto points = SynthesizeGesture(w, layout, options.gesture, rng, t);
        t = points.back().t + 400;
        literal.push_back(GestureLiteral(layout, points));
        if (!decode) continue;
        const auto a = Clock::now();
        session.Gesture(points);
        report.latency_ms.push_back(Ms(a, Clock::now()));
        run.Commit();
      }
    } else {
      const auto taps = SynthesizeTaps(ref, layout, options.noise, rng);
      literal = SplitWords(TapLiteral(layout, taps));
      if (decode) {
        for (const TouchPoint& p : taps) {
          const auto k = layout.KeyAt(p.x, p.y);
          if (k && layout.IsSeparator(*k)) {
            run.Commit();
            continue;
          }
          const auto a = Clock::now();
          session.Tap(p);
          report.latency_ms.push_back(Ms(a, Clock::now()));
        }
        run.Commit();
      }
    }
    const std::vector<std::string> hyp = decode ? session.History() : literal;
    report.errors += AlignWords(ref, hyp);
    report.literal_errors += AlignWords(ref, literal);
    report.outputs.push_back(Join(hyp, " "));
  }
  return report;
}

}  // namespace fstkey
