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

#ifndef FSTKEY_JSON_UTIL_H_
#define FSTKEY_JSON_UTIL_H_

#include <initializer_list>
#include <string>

#include "fstkey/errors.h"
#include "json.hpp"

namespace fstkey {

// Config object reader: copies present fields and rejects unknown ones.
class JsonFields {
 public:
  JsonFields(const nlohmann::json& j, std::string where)
      : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  template <typename T>
  JsonFields& Get(const char* key, T& field) {
    known_.push_back(key);
    auto it = j_.find(key);
    if (it == j_.end()) return *this;
    try {
      field = it->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
    return *this;
  }

  // Nested object, if present.
  const nlohmann::json* Object(const char* key) {
    known_.push_back(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void RejectUnknown() const {
    for (const auto& [k, v] : j_.items()) {
      bool ok = false;
      for (const std::string& n : known_) ok = ok || n == k;
      if (!ok) throw ConfigError(where_ + ": unknown option '" + k + "'");
    }
  }

 private:
  const nlohmann::json& j_;
  std::string where_;
  std::vector<std::string> known_;
};

}  // namespace fstkey

#endif  // FSTKEY_JSON_UTIL_H_
