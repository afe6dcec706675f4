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

#ifndef FSTKEY_GRAPH_ALPHABET_H_
#define FSTKEY_GRAPH_ALPHABET_H_

#include <memory>
#include <string>
#include <vector>

#include "fstkey/fst/symbol_table.h"
#include "fstkey/spatial/layout.h"

namespace fstkey {

inline constexpr char kSpaceSymbol[] = "<space>";
inline constexpr char kBeginContext[] = "^";

// Letter keys of a layout and the two label spaces built on them.
//
// Key symbols (output of C, input of L): <eps>, key 0..K-1, <space>, then
// one literal-key symbol "<lk>x" per key.
// Context symbols (input of C): <eps>, "a_b" for a in {^} + keys and b in
// keys, <space>, then the literal-key symbols again.
class KeyAlphabet {
 public:
  KeyAlphabet() = default;
  explicit KeyAlphabet(const KeyboardLayout& layout);
  // For tests: keys without geometry.
  explicit KeyAlphabet(std::vector<std::string> keys);

  int NumKeys() const { return static_cast<int>(keys_.size()); }
  const std::vector<std::string>& keys() const { return keys_; }
  const std::string& key(int i) const { return keys_[i]; }
  int IndexOf(const std::string& code) const;  // -1 when absent
  // Layout key index of key i (-1 for alphabets without a layout).
  int LayoutIndex(int i) const { return layout_index_.empty() ? -1 : layout_index_[i]; }
  // Key index of a layout key, -1 for the separator.
  int FromLayoutIndex(int layout_key) const;

  Label KeyLabel(int i) const { return 1 + i; }
  Label SpaceLabel() const { return 1 + NumKeys(); }
  Label LiteralKeyLabel(int i) const { return 2 + NumKeys() + i; }

  // prev = -1 for the word-initial context.
  Label ContextLabel(int prev, int key) const {
    return 1 + (prev + 1) * NumKeys() + key;
  }
  Label ContextSpaceLabel() const { return 1 + (NumKeys() + 1) * NumKeys(); }
  Label ContextLiteralLabel(int i) const { return ContextSpaceLabel() + 1 + i; }

  const std::shared_ptr<const SymbolTable>& key_symbols() const { return key_symbols_; }
  const std::shared_ptr<const SymbolTable>& context_symbols() const {
    return context_symbols_;
  }

 private:
  void BuildTables();

  std::vector<std::string> keys_;
  std::vector<int> layout_index_;
  std::shared_ptr<const SymbolTable> key_symbols_;
  std::shared_ptr<const SymbolTable> context_symbols_;
};

}  // namespace fstkey

#endif  // FSTKEY_GRAPH_ALPHABET_H_
