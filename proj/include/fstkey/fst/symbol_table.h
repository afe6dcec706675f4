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

#ifndef FSTKEY_FST_SYMBOL_TABLE_H_
#define FSTKEY_FST_SYMBOL_TABLE_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fstkey {

using Label = int32_t;
inline constexpr Label kEpsilon = 0;
inline constexpr Label kNoLabel = -1;

// Dense bijection text <-> id. Id 0 is always "<eps>".
class SymbolTable {
 public:
  SymbolTable();

  // Returns the existing id when the symbol is already registered.
  Label AddSymbol(std::string_view symbol);
  std::optional<Label> Find(std::string_view symbol) const;
  // Throws std::out_of_range for unknown ids.
  const std::string& Symbol(Label id) const;
  bool Contains(std::string_view symbol) const { return Find(symbol).has_value(); }

  Label Size() const { return static_cast<Label>(symbols_.size()); }

  // Returns a table where old id i is renamed to permutation[i].
  // permutation must be a bijection on [0, Size()) fixing 0.
  SymbolTable Permuted(const std::vector<Label>& permutation) const;

  void Write(std::ostream& os) const;
  static SymbolTable Read(std::istream& is);

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> index_;
};

}  // namespace fstkey

#endif  // FSTKEY_FST_SYMBOL_TABLE_H_
