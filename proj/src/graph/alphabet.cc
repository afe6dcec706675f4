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

#include "fstkey/graph/alphabet.h"

#include "fstkey/errors.h"

namespace fstkey {

KeyAlphabet::KeyAlphabet(const KeyboardLayout& layout) {
  for (int i = 0; i < layout.NumKeys(); ++i) {
    if (layout.IsSeparator(i)) continue;
    keys_.push_back(layout.key(i).code);
    layout_index_.push_back(i);
  }
  BuildTables();
}

KeyAlphabet::KeyAlphabet(std::vector<std::string> keys) : keys_(std::move(keys)) {
  BuildTables();
}

void KeyAlphabet::BuildTables() {
  if (keys_.empty()) throw ConfigError("key alphabet is empty");
  auto keys = std::make_shared<SymbolTable>();
  auto ctx = std::make_shared<SymbolTable>();
  for (const std::string& k : keys_) {
    if (keys->Contains(k)) throw ConfigError("duplicate key '" + k + "'");
    keys->AddSymbol(k);
  }
  keys->AddSymbol(kSpaceSymbol);
  for (const std::string& k : keys_) keys->AddSymbol("<lk>" + k);
  for (int a = -1; a < NumKeys(); ++a) {
    for (int b = 0; b < NumKeys(); ++b) {
      ctx->AddSymbol((a < 0 ? std::string(kBeginContext) : keys_[a]) + "_" + keys_[b]);
    }
  }
  ctx->AddSymbol(kSpaceSymbol);
  for (const std::string& k : keys_) ctx->AddSymbol("<lk>" + k);
  if (keys->Size() != 2 + 2 * NumKeys() ||
      ctx->Size() != 2 + (NumKeys() + 1) * NumKeys() + NumKeys()) {
    throw ConfigError("key codes collide with reserved symbols");
  }
  key_symbols_ = keys;
  context_symbols_ = ctx;
}

int KeyAlphabet::IndexOf(const std::string& code) const {
  for (int i = 0; i < NumKeys(); ++i) {
    if (keys_[i] == code) return i;
  }
  return -1;
}

int KeyAlphabet::FromLayoutIndex(int layout_key) const {
  for (int i = 0; i < static_cast<int>(layout_index_.size()); ++i) {
    if (layout_index_[i] == layout_key) return i;
  }
  return -1;
}

}  // namespace fstkey
