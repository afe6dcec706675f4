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

#ifndef FSTKEY_FST_FST_H_
#define FSTKEY_FST_FST_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fstkey/fst/symbol_table.h"
#include "fstkey/fst/weight.h"

namespace fstkey {

using StateId = int32_t;
inline constexpr StateId kNoState = -1;

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  Weight weight = Weight::One();
  StateId nextstate = kNoState;

  friend bool operator==(const Arc&, const Arc&) = default;
};

enum FstProperty : uint32_t {
  kILabelSorted = 1u << 0,
  kOLabelSorted = 1u << 1,
  kAcceptor = 1u << 2,
};

enum class Tape { kInput, kOutput };

// Mutable vector-of-states transducer over the tropical semiring.
//
// Property flags are advisory: they are set by ArcSort() and cleared by any
// mutation that could invalidate them.
class WeightedFst {
 public:
  WeightedFst() = default;

  StateId AddState();
  void ReserveStates(StateId n) { states_.reserve(n); }
  void SetStart(StateId s);
  void SetFinal(StateId s, Weight w);
  void AddArc(StateId s, const Arc& arc);
  void DeleteArcs(StateId s);

  StateId Start() const { return start_; }
  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  Weight Final(StateId s) const { return states_[s].final; }
  bool IsFinal(StateId s) const { return !states_[s].final.IsZero(); }
  std::span<const Arc> Arcs(StateId s) const { return states_[s].arcs; }
  size_t NumArcs(StateId s) const { return states_[s].arcs.size(); }
  size_t TotalArcs() const;

  // Direct arc access; clears sort properties.
  std::vector<Arc>& MutableArcs(StateId s);

  uint32_t Properties() const { return properties_; }
  bool HasProperty(FstProperty p) const { return (properties_ & p) != 0; }
  void SetProperty(FstProperty p, bool on);

  const std::shared_ptr<const SymbolTable>& InputSymbols() const {
    return isymbols_;
  }
  const std::shared_ptr<const SymbolTable>& OutputSymbols() const {
    return osymbols_;
  }
  void SetInputSymbols(std::shared_ptr<const SymbolTable> s) {
    isymbols_ = std::move(s);
  }
  void SetOutputSymbols(std::shared_ptr<const SymbolTable> s) {
    osymbols_ = std::move(s);
  }

  // Binary form: "FSTK1", little-endian counts, states, arcs, then both
  // symbol tables (presence byte + length-prefixed UTF-8 strings).
  void Write(std::ostream& os) const;
  static WeightedFst Read(std::istream& is);

  // Text dump, one arc per line "src dst ilabel olabel weight", then finals
  // as "state weight". Arcs of the start state are listed first.
  std::string ToText() const;

  // Throws ConfigError when an arc points outside the machine.
  void Validate() const;

 private:
  struct State {
    std::vector<Arc> arcs;
    Weight final = Weight::Zero();
  };

  std::vector<State> states_;
  StateId start_ = kNoState;
  uint32_t properties_ = 0;
  std::shared_ptr<const SymbolTable> isymbols_;
  std::shared_ptr<const SymbolTable> osymbols_;
};

}  // namespace fstkey

#endif  // FSTKEY_FST_FST_H_
