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

#include "fstkey/harness/synth.h"

#include <algorithm>
#include <cmath>

#include "fstkey/errors.h"
#include "fstkey/json_util.h"
#include "fstkey/text.h"

namespace fstkey {

nlohmann::json ToJson(const NoiseParams& p) {
  return {{"spread", p.spread},
          {"deletion_rate", p.deletion_rate},
          {"insertion_rate", p.insertion_rate},
          {"seed", p.seed}};
}

void MergeJson(const nlohmann::json& j, NoiseParams& p) {
  JsonFields f(j, "noise");
  f.Get("spread", p.spread)
      .Get("deletion_rate", p.deletion_rate)
      .Get("insertion_rate", p.insertion_rate)
      .Get("seed", p.seed)
      .RejectUnknown();
  auto rate = [](double r) { return r >= 0 && r < 1; };
  if (!(p.spread >= 0) || !rate(p.deletion_rate) || !rate(p.insertion_rate)) {
    throw ConfigError("noise: spread must be >= 0 and rates in [0, 1)");
  }
}

nlohmann::json ToJson(const GestureParams& p) {
  return {{"speed", p.speed},     {"dwell_ms", p.dwell_ms},   {"jitter", p.jitter},
          {"sample_ms", p.sample_ms}, {"seed", p.seed}};
}

void MergeJson(const nlohmann::json& j, GestureParams& p) {
  JsonFields f(j, "gesture");
  f.Get("speed", p.speed)
      .Get("dwell_ms", p.dwell_ms)
      .Get("jitter", p.jitter)
      .Get("sample_ms", p.sample_ms)
      .Get("seed", p.seed)
      .RejectUnknown();
  if (!(p.speed > 0) || !(p.dwell_ms >= 0) || !(p.jitter >= 0) || !(p.sample_ms > 0)) {
    throw ConfigError("gesture: speed and sample_ms must be positive, dwell and jitter >= 0");
  }
}

namespace {

std::vector<int> CollectKeys(const KeyboardLayout& layout, const std::string& word,
                             std::vector<std::string>& bad) {
  std::vector<int> keys;
  for (const std::string& c : SplitUtf8(AsciiLower(word))) {
    const auto k = layout.IndexOf(c);
    if (!k || layout.IsSeparator(*k)) {
      if (std::find(bad.begin(), bad.end(), c) == bad.end()) bad.push_back(c);
      continue;
    }
    keys.push_back(*k);
  }
  return keys;
}

void ThrowIfBad(const KeyboardLayout& layout, const std::vector<std::string>& bad) {
  if (!bad.empty()) {
    throw InputError("layout " + layout.id() + " cannot type: " + Join(bad, " "));
  }
}

}  // namespace

std::vector<int> KeysOf(const KeyboardLayout& layout, const std::string& word) {
  std::vector<std::string> bad;
  std::vector<int> keys = CollectKeys(layout, word, bad);
  ThrowIfBad(layout, bad);
  return keys;
}

std::vector<TouchPoint> SynthesizeTaps(const std::vector<std::string>& words,
                                       const KeyboardLayout& layout, const NoiseParams& noise,
                                       std::mt19937_64& rng, double t0, double tap_ms) {
  std::vector<std::vector<int>> typed;
  std::vector<std::string> bad;
  for (const std::string& w : words) typed.push_back(CollectKeys(layout, w, bad));
  ThrowIfBad(layout, bad);
  const auto space = layout.separator();
  if (words.size() > 1 && !space) throw InputError("layout has no space key");

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<TouchPoint> out;
  double t = t0;
  auto tap = [&](const Key& k, bool noisy) {
    double x = k.cx, y = k.cy;
    if (noisy) {
      x += gauss(rng) * noise.spread * k.w;
      y += gauss(rng) * noise.spread * k.h;
    }
    out.push_back({x, y, t += tap_ms, TouchKind::kDown});
  };
  for (size_t i = 0; i < typed.size(); ++i) {
    if (i > 0) tap(layout.key(*space), false);
    for (int k : typed[i]) {
      if (coin(rng) < noise.deletion_rate) continue;
      tap(layout.key(k), true);
      if (coin(rng) < noise.insertion_rate) tap(layout.key(k), true);
    }
  }
  return out;
}

std::vector<TouchPoint> SynthesizeTaps(const std::vector<std::string>& words,
                                       const KeyboardLayout& layout, const NoiseParams& noise) {
  std::mt19937_64 rng(noise.seed);
  return SynthesizeTaps(words, layout, noise, rng);
}

std::vector<TouchPoint> SynthesizeGesture(const std::string& word, const KeyboardLayout& layout,
                                          const GestureParams& params, std::mt19937_64& rng,
                                          double t0) {
  const std::vector<int> keys = KeysOf(layout, word);
  if (keys.empty()) throw InputError("nothing to swipe");
  std::normal_distribution<double> gauss(0.0, params.jitter);
  // Timed waypoints: arrive at a key, leave after the dwell.
  struct Way {
    double t, x, y;
  };
  std::vector<Way> way;
  double t = t0;
  for (size_t i = 0; i < keys.size(); ++i) {
    const Key& k = layout.key(keys[i]);
    const double x = k.cx + (params.jitter > 0 ? gauss(rng) : 0.0);
    const double y = k.cy + (params.jitter > 0 ? gauss(rng) : 0.0);
    if (i > 0) t += std::hypot(x - way.back().x, y - way.back().y) / params.speed;
    way.push_back({t, x, y});
    t += params.dwell_ms;
    way.push_back({t, x, y});
  }
  std::vector<TouchPoint> out;
  const double end = way.back().t;
  size_t seg = 0;
  for (double s = t0;; s += params.sample_ms) {
    const double now = std::min(s, end);
    while (seg + 2 < way.size() && way[seg + 1].t < now) ++seg;
    const Way& a = way[seg];
    const Way& b = way[seg + 1];
    const double u = b.t > a.t ? (now - a.t) / (b.t - a.t) : 0.0;
    out.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y), now, TouchKind::kMove});
    if (now >= end) break;
  }
  if (out.size() < 2) out.push_back({out.back().x, out.back().y, out.back().t + 1});
  out.front().kind = TouchKind::kDown;
  out.back().kind = TouchKind::kUp;
  return out;
}

std::vector<TouchPoint> SynthesizeGesture(const std::string& word, const KeyboardLayout& layout,
                                          const GestureParams& params) {
  std::mt19937_64 rng(params.seed);
  return SynthesizeGesture(word, layout, params, rng);
}

namespace {

// Letter under the point; nearest letter outside every box. -1 for space.
int LetterAt(const KeyboardLayout& layout, double x, double y) {
  const auto k = layout.KeyAt(x, y);
  if (k && layout.IsSeparator(*k)) return -1;
  return k ? *k : layout.NearestKey(x, y);
}

}  // namespace

std::string TapLiteral(const KeyboardLayout& layout, const std::vector<TouchPoint>& taps) {
  std::string out;
  for (const TouchPoint& p : taps) {
    const int k = LetterAt(layout, p.x, p.y);
    out += k < 0 ? " " : layout.key(k).code;
  }
  return out;
}

std::string GestureLiteral(const KeyboardLayout& layout, const std::vector<TouchPoint>& points) {
  std::string out;
  int last = -2;
  for (const TouchPoint& p : points) {
    const int k = LetterAt(layout, p.x, p.y);
    if (k == last || k < 0) continue;
    out += layout.key(k).code;
    last = k;
  }
  return out;
}

}  // namespace fstkey
