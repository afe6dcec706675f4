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

#include "fstkey/fst/symbol_table.h"

#include <stdexcept>

#include "fstkey/errors.h"
#include "fstkey/fst/binary_io.h"

namespace fstkey {

SymbolTable::SymbolTable() { AddSymbol("<eps>"); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  auto it = index_.find(std::string(symbol));
  if (it != index_.end()) return it->second;
  const Label id = Size();
  symbols_.emplace_back(symbol);
  index_.emplace(symbols_.back(), id);
  return id;
}

std::optional<Label> SymbolTable::Find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::Symbol(Label id) const {
  if (id < 0 || id >= Size()) {
    throw std::out_of_range("symbol id " + std::to_string(id));
  }
  return symbols_[id];
}

SymbolTable SymbolTable::Permuted(const std::vector<Label>& permutation) const {
  if (permutation.size() != symbols_.size() || permutation[0] != 0) {
    throw ConfigError("symbol permutation does not fit the table");
  }
  std::vector<std::string> out(symbols_.size());
  std::vector<bool> used(symbols_.size(), false);
  for (size_t i = 0; i < symbols_.size(); ++i) {
    const Label to = permutation[i];
    if (to < 0 || to >= Size() || used[to]) {
      throw ConfigError("symbol permutation is not a bijection");
    }
    used[to] = true;
    out[to] = symbols_[i];
  }
  SymbolTable result;
  for (size_t i = 1; i < out.size(); ++i) result.AddSymbol(out[i]);
  return result;
}

void SymbolTable::Write(std::ostream& os) const {
  io::Write<uint32_t>(os, static_cast<uint32_t>(symbols_.size()));
  for (const auto& s : symbols_) io::WriteString(os, s);
}

SymbolTable SymbolTable::Read(std::istream& is) {
  const auto n = io::Read<uint32_t>(is);
  SymbolTable table;
  for (uint32_t i = 0; i < n; ++i) {
    std::string s = io::ReadString(is);
    if (i == 0) continue;
    if (table.AddSymbol(s) != static_cast<Label>(i)) {
      throw ParseError("duplicate symbol in table: " + s);
    }
  }
  return table;
}

}  // namespace fstkey
