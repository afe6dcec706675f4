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

#include "fstkey/spatial/layout.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "fstkey/errors.h"

namespace fstkey {

KeyboardLayout::KeyboardLayout(std::string id, std::vector<Key> keys)
    : id_(std::move(id)), keys_(std::move(keys)) {
  std::set<std::string> codes;
  min_x_ = min_y_ = std::numeric_limits<double>::infinity();
  max_x_ = max_y_ = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < NumKeys(); ++i) {
    const Key& k = keys_[i];
    if (k.code.empty()) throw ConfigError("layout: key without a code");
    if (!codes.insert(k.code).second) {
      throw ConfigError("layout: duplicate key code '" + k.code + "'");
    }
    if (!(k.w > 0) || !(k.h > 0)) {
      throw ConfigError("layout: key '" + k.code + "' has an empty box");
    }
    if (!k.Contains(k.cx, k.cy)) {
      throw ConfigError("layout: center of '" + k.code + "' is outside its box");
    }
    if (k.code == " ") separator_ = i;
    min_x_ = std::min(min_x_, k.left);
    min_y_ = std::min(min_y_, k.top);
    max_x_ = std::max(max_x_, k.left + k.w);
    max_y_ = std::max(max_y_, k.top + k.h);
  }
  if (keys_.empty()) min_x_ = min_y_ = max_x_ = max_y_ = 0;
}

KeyboardLayout KeyboardLayout::FromJson(const nlohmann::json& j) {
  try {
    std::vector<Key> keys;
    for (const auto& k : j.at("keys")) {
      Key key;
      key.code = k.at("code").get<std::string>();
      key.label = k.value("label", key.code);
      key.left = k.at("left").get<double>();
      key.top = k.at("top").get<double>();
      key.w = k.at("w").get<double>();
      key.h = k.at("h").get<double>();
      key.cx = k.value("cx", key.left + key.w / 2);
      key.cy = k.value("cy", key.top + key.h / 2);
      keys.push_back(std::move(key));
    }
    return KeyboardLayout(j.value("layout_id", std::string("unnamed")),
                          std::move(keys));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("layout: ") + e.what());
  }
}

KeyboardLayout KeyboardLayout::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("layout: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("layout " + path + ": " + e.what());
  }
  return FromJson(j);
}

nlohmann::json KeyboardLayout::ToJson() const {
  nlohmann::json keys = nlohmann::json::array();
  for (const Key& k : keys_) {
    keys.push_back({{"code", k.code}, {"label", k.label}, {"cx", k.cx},
                    {"cy", k.cy}, {"left", k.left}, {"top", k.top},
                    {"w", k.w}, {"h", k.h}});
  }
  return {{"layout_id", id_}, {"unit", "px"}, {"keys", keys}};
}

std::optional<int> KeyboardLayout::IndexOf(const std::string& code) const {
  for (int i = 0; i < NumKeys(); ++i) {
    if (keys_[i].code == code) return i;
  }
  return std::nullopt;
}

std::optional<int> KeyboardLayout::KeyAt(double x, double y) const {
  std::optional<int> best;
  double best_d = 0;
  for (int i = 0; i < NumKeys(); ++i) {
    const Key& k = keys_[i];
    if (!k.Contains(x, y)) continue;
    const double d = std::hypot(x - k.cx, y - k.cy);
    if (!best || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

int KeyboardLayout::NearestKey(double x, double y) const {
  int best = -1;
  double best_d = 0;
  for (int i = 0; i < NumKeys(); ++i) {
    if (IsSeparator(i)) continue;
    const double d = std::hypot(x - keys_[i].cx, y - keys_[i].cy);
    if (best < 0 || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  if (best < 0) throw ConfigError("layout has no letter keys");
  return best;
}

}  // namespace fstkey
