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

#include "fstkey/spatial/likelihood.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fstkey/errors.h"
#include "fstkey/json_util.h"

namespace fstkey {
namespace {

constexpr double kTwoPi = 6.283185307179586;

struct Located {
  double x, y;
};

Located Clamp(const KeyboardLayout& layout, double x, double y) {
  return {std::clamp(x, layout.min_x(), layout.max_x()),
          std::clamp(y, layout.min_y(), layout.max_y())};
}

// Top-K normalized scores at a point.
std::vector<Weight> Scores(const KeyboardLayout& layout, double x, double y,
                           const SpatialParams& params) {
  std::vector<std::pair<double, int>> costs;
  for (int i = 0; i < layout.NumKeys(); ++i) {
    if (layout.IsSeparator(i)) continue;
    costs.emplace_back(KeyCost(layout.key(i), x, y, params), i);
  }
  if (costs.empty()) throw ConfigError("layout has no letter keys");
  const size_t k = std::min<size_t>(std::max(params.top_k, 1), costs.size());
  std::partial_sort(costs.begin(), costs.begin() + k, costs.end());
  costs.resize(k);
  const double lo = costs.front().first;
  double z = 0;
  for (const auto& c : costs) z += std::exp(lo - c.first);
  const double log_norm = lo - std::log(z);
  std::vector<Weight> scores(layout.NumKeys(), Weight::Zero());
  for (const auto& [c, i] : costs) scores[i] = Weight(c - log_norm);
  return scores;
}

}  // namespace

int Frame::BestKey() const {
  int best = -1;
  for (int i = 0; i < static_cast<int>(scores.size()); ++i) {
    if (scores[i].IsZero()) continue;
    if (best < 0 || scores[i] < scores[best]) best = i;
  }
  return best;
}

double KeyCost(const Key& key, double x, double y, const SpatialParams& p) {
  const double sx = p.sigma_x_scale * key.w;
  const double sy = p.sigma_y_scale * key.h;
  const double dx = (x - key.cx) / sx;
  const double dy = (y - key.cy) / sy;
  return 0.5 * (dx * dx + dy * dy) + std::log(kTwoPi * sx * sy);
}

Frame TapLikelihood(const KeyboardLayout& layout, const TouchPoint& p,
                    const SpatialParams& params) {
  if (layout.NumKeys() == 0) throw ConfigError("empty keyboard layout");
  Frame f;
  f.point = p;
  const Located c = Clamp(layout, p.x, p.y);
  f.point.x = c.x;
  f.point.y = c.y;
  f.scores = Scores(layout, c.x, c.y, params);
  f.literal_key = layout.KeyAt(c.x, c.y);
  return f;
}

std::vector<Frame> GestureFrames(const KeyboardLayout& layout,
                                 const std::vector<TouchPoint>& trajectory,
                                 const SpatialParams& params) {
  if (layout.NumKeys() == 0) throw ConfigError("empty keyboard layout");
  if (trajectory.size() < 2) {
    throw InputError("a gesture needs at least two touch points");
  }
  for (size_t i = 1; i < trajectory.size(); ++i) {
    if (trajectory[i].t < trajectory[i - 1].t) {
      throw InputError("gesture time goes backwards");
    }
  }
  if (!(params.period_ms > 0)) throw ConfigError("gesture period must be > 0");
  const double t0 = trajectory.front().t;
  const double t1 = trajectory.back().t;
  auto at = [&](double t) {
    auto it = std::upper_bound(
        trajectory.begin(), trajectory.end(), t,
        [](double v, const TouchPoint& q) { return v < q.t; });
    if (it == trajectory.begin()) return Located{it->x, it->y};
    if (it == trajectory.end()) {
      return Located{trajectory.back().x, trajectory.back().y};
    }
    const TouchPoint& b = *it;
    const TouchPoint& a = *(it - 1);
    const double u = b.t > a.t ? (t - a.t) / (b.t - a.t) : 1.0;
    return Located{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
  };

  const int n =
      static_cast<int>(std::floor((t1 - t0) / params.period_ms + 1e-9)) + 1;
  std::vector<Frame> frames;
  frames.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = t0 + i * params.period_ms;
    const double ta = std::max(t0, t - params.speed_half_window_ms);
    const double tb = std::min(t1, t + params.speed_half_window_ms);
    Frame f;
    f.gesture = true;
    const Located pos = Clamp(layout, at(t).x, at(t).y);
    f.point = {pos.x, pos.y, t, TouchKind::kMove};
    if (tb > ta) {
      const Located pa = at(ta);
      const Located pb = at(tb);
      f.speed = std::hypot(pb.x - pa.x, pb.y - pa.y) / (tb - ta);
    }
    f.align = std::clamp(1.0 - f.speed / params.speed_max, 0.0, 1.0);
    f.scores = Scores(layout, pos.x, pos.y, params);
    frames.push_back(std::move(f));
  }
  return frames;
}

Weight AlignedCost(const Frame& f, int k, const SpatialParams& params) {
  return Times(f.scores[k], Weight(params.dwell_weight * (1.0 - f.align)));
}

Weight TransitCost(const Frame& f, const SpatialParams& params) {
  return Weight(params.transit_base + params.dwell_weight * f.align);
}

int LiteralKeyOrNearest(const KeyboardLayout& layout, const Frame& f) {
  if (f.literal_key && !layout.IsSeparator(*f.literal_key)) {
    return *f.literal_key;
  }
  return layout.NearestKey(f.point.x, f.point.y);
}

std::string LiteralString(const KeyboardLayout& layout,
                          const std::vector<Frame>& frames) {
  std::string out;
  for (const Frame& f : frames) out += layout.key(LiteralKeyOrNearest(layout, f)).code;
  return out;
}

nlohmann::json ToJson(const SpatialParams& p) {
  return {{"sigma_x_scale", p.sigma_x_scale},
          {"sigma_y_scale", p.sigma_y_scale},
          {"top_k", p.top_k},
          {"period_ms", p.period_ms},
          {"speed_half_window_ms", p.speed_half_window_ms},
          {"speed_max", p.speed_max},
          {"dwell_weight", p.dwell_weight},
          {"transit_base", p.transit_base}};
}

void MergeJson(const nlohmann::json& j, SpatialParams& p) {
  JsonFields(j, "spatial")
      .Get("sigma_x_scale", p.sigma_x_scale)
      .Get("sigma_y_scale", p.sigma_y_scale)
      .Get("top_k", p.top_k)
      .Get("period_ms", p.period_ms)
      .Get("speed_half_window_ms", p.speed_half_window_ms)
      .Get("speed_max", p.speed_max)
      .Get("dwell_weight", p.dwell_weight)
      .Get("transit_base", p.transit_base)
      .RejectUnknown();
  if (p.sigma_x_scale <= 0 || p.sigma_y_scale <= 0 || p.top_k < 1 || p.period_ms <= 0 ||
      p.speed_max <= 0) {
    throw ConfigError("spatial: scales, top_k, period_ms and speed_max must be positive");
  }
}

}  // namespace fstkey
