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

#include "fstkey/fst/fst.h"

#include <iomanip>
#include <sstream>

#include "fstkey/errors.h"
#include "fstkey/fst/binary_io.h"

namespace fstkey {

StateId WeightedFst::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

void WeightedFst::SetStart(StateId s) { start_ = s; }

void WeightedFst::SetFinal(StateId s, Weight w) { states_[s].final = w; }

void WeightedFst::AddArc(StateId s, const Arc& arc) {
  auto& arcs = states_[s].arcs;
  if (!arcs.empty()) {
    if (arcs.back().ilabel > arc.ilabel) properties_ &= ~kILabelSorted;
    if (arcs.back().olabel > arc.olabel) properties_ &= ~kOLabelSorted;
  }
  if (arc.ilabel != arc.olabel) properties_ &= ~kAcceptor;
  arcs.push_back(arc);
}

void WeightedFst::DeleteArcs(StateId s) { states_[s].arcs.clear(); }

size_t WeightedFst::TotalArcs() const {
  size_t n = 0;
  for (const auto& st : states_) n += st.arcs.size();
  return n;
}

std::vector<Arc>& WeightedFst::MutableArcs(StateId s) {
  properties_ &= ~(kILabelSorted | kOLabelSorted | kAcceptor);
  return states_[s].arcs;
}

void WeightedFst::SetProperty(FstProperty p, bool on) {
  if (on) {
    properties_ |= p;
  } else {
    properties_ &= ~p;
  }
}

void WeightedFst::Validate() const {
  if (!states_.empty() && (start_ < 0 || start_ >= NumStates())) {
    throw ConfigError("start state out of range");
  }
  for (StateId s = 0; s < NumStates(); ++s) {
    for (const Arc& a : states_[s].arcs) {
      if (a.nextstate < 0 || a.nextstate >= NumStates()) {
        throw ConfigError("arc from state " + std::to_string(s) +
                          " targets missing state " +
                          std::to_string(a.nextstate));
      }
    }
  }
}

namespace {

void WriteOptionalTable(std::ostream& os,
                        const std::shared_ptr<const SymbolTable>& t) {
  io::Write<uint8_t>(os, t ? 1 : 0);
  if (t) t->Write(os);
}

std::shared_ptr<const SymbolTable> ReadOptionalTable(std::istream& is) {
  if (io::Read<uint8_t>(is) == 0) return nullptr;
  return std::make_shared<const SymbolTable>(SymbolTable::Read(is));
}

}  // namespace

void WeightedFst::Write(std::ostream& os) const {
  io::WriteMagic(os, "FSTK1");
  io::Write<uint32_t>(os, properties_);
  io::Write<int32_t>(os, start_);
  io::Write<uint32_t>(os, static_cast<uint32_t>(states_.size()));
  io::Write<uint64_t>(os, TotalArcs());
  // State table: final weight and arc count per state.
  for (const auto& st : states_) {
    io::Write<double>(os, st.final.Value());
    io::Write<uint32_t>(os, static_cast<uint32_t>(st.arcs.size()));
  }
  // Arc table in state order.
  for (const auto& st : states_) {
    for (const Arc& a : st.arcs) {
      io::Write<int32_t>(os, a.ilabel);
      io::Write<int32_t>(os, a.olabel);
      io::Write<double>(os, a.weight.Value());
      io::Write<int32_t>(os, a.nextstate);
    }
  }
  WriteOptionalTable(os, isymbols_);
  WriteOptionalTable(os, osymbols_);
}

WeightedFst WeightedFst::Read(std::istream& is) {
  io::ExpectMagic(is, "FSTK1");
  WeightedFst fst;
  const auto props = io::Read<uint32_t>(is);
  fst.start_ = io::Read<int32_t>(is);
  const auto nstates = io::Read<uint32_t>(is);
  const auto narcs = io::Read<uint64_t>(is);
  fst.states_.resize(nstates);
  uint64_t counted = 0;
  std::vector<uint32_t> counts(nstates);
  for (uint32_t s = 0; s < nstates; ++s) {
    fst.states_[s].final = Weight(io::Read<double>(is));
    counts[s] = io::Read<uint32_t>(is);
    counted += counts[s];
  }
  if (counted != narcs) throw ParseError("arc count mismatch in FSTK1 stream");
  for (uint32_t s = 0; s < nstates; ++s) {
    auto& arcs = fst.states_[s].arcs;
    arcs.resize(counts[s]);
    for (auto& a : arcs) {
      a.ilabel = io::Read<int32_t>(is);
      a.olabel = io::Read<int32_t>(is);
      a.weight = Weight(io::Read<double>(is));
      a.nextstate = io::Read<int32_t>(is);
    }
  }
  fst.isymbols_ = ReadOptionalTable(is);
  fst.osymbols_ = ReadOptionalTable(is);
  fst.properties_ = props;
  fst.Validate();
  return fst;
}

std::string WeightedFst::ToText() const {
  std::ostringstream os;
  os << std::setprecision(17);
  // The start state's arcs come first so the first source is the start.
  std::vector<StateId> order;
  if (start_ != kNoState) order.push_back(start_);
  for (StateId s = 0; s < NumStates(); ++s) {
    if (s != start_) order.push_back(s);
  }
  for (StateId s : order) {
    for (const Arc& a : states_[s].arcs) {
      os << s << ' ' << a.nextstate << ' ' << a.ilabel << ' ' << a.olabel
         << ' ' << a.weight.Value() << '\n';
    }
  }
  for (StateId s : order) {
    if (IsFinal(s)) os << s << ' ' << states_[s].final.Value() << '\n';
  }
  return os.str();
}

}  // namespace fstkey
