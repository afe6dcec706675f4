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

#ifndef FSTKEY_SPATIAL_LAYOUT_H_
#define FSTKEY_SPATIAL_LAYOUT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fstkey {

struct Key {
  std::string code;   // character produced, e.g. "a" or " "
  std::string label;  // what the key shows
  double cx = 0, cy = 0;
  double left = 0, top = 0, w = 0, h = 0;

  bool Contains(double x, double y) const {
    return x >= left && x <= left + w && y >= top && y <= top + h;
  }
};

// Key geometry in logical pixels. Key order is the order of the file.
class KeyboardLayout {
 public:
  KeyboardLayout() = default;
  KeyboardLayout(std::string id, std::vector<Key> keys);

  static KeyboardLayout FromJson(const nlohmann::json& j);
  static KeyboardLayout Load(const std::string& path);
  nlohmann::json ToJson() const;

  const std::string& id() const { return id_; }
  const std::vector<Key>& keys() const { return keys_; }
  const Key& key(int i) const { return keys_[i]; }
  int NumKeys() const { return static_cast<int>(keys_.size()); }
  std::optional<int> IndexOf(const std::string& code) const;

  // The space key, if the layout has one. It never takes part in letter
  // scoring.
  std::optional<int> separator() const { return separator_; }
  bool IsSeparator(int i) const { return separator_ && *separator_ == i; }

  // Bounding box of all keys.
  double min_x() const { return min_x_; }
  double min_y() const { return min_y_; }
  double max_x() const { return max_x_; }
  double max_y() const { return max_y_; }

  // Key whose box holds the point; overlapping boxes go to the nearer
  // center, then to the earlier key.
  std::optional<int> KeyAt(double x, double y) const;
  // Nearest non-separator key center.
  int NearestKey(double x, double y) const;

 private:
  std::string id_;
  std::vector<Key> keys_;
  std::optional<int> separator_;
  double min_x_ = 0, min_y_ = 0, max_x_ = 0, max_y_ = 0;
};

}  // namespace fstkey

#endif  // FSTKEY_SPATIAL_LAYOUT_H_
