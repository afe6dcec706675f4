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

#include "fstkey/lm/char_lm.h"

#include <cmath>

#include "fstkey/errors.h"
#include "fstkey/fst/binary_io.h"
#include "fstkey/text.h"

namespace fstkey {

CharLM CharLM::Train(const std::vector<std::string>& alphabet,
                     const std::vector<std::pair<std::string, double>>& words,
                     const CharLMParams& params) {
  if (alphabet.empty()) throw ConfigError("character model needs an alphabet");
  CharLM m;
  m.alphabet_ = alphabet;
  m.params_ = params;
  const int ctx = m.Ctx(), out = m.Out();
  m.uni_.assign(out, 0);
  m.bi_.assign(ctx * out, 0);
  m.tri_.assign(ctx * ctx * out, 0);
  m.bi_total_.assign(ctx, 0);
  m.tri_total_.assign(ctx * ctx, 0);
  for (const auto& [text, weight] : words) {
    if (!(weight > 0)) continue;
    std::vector<Id> seq{m.Begin()};
    for (const std::string& c : SplitUtf8(text)) seq.push_back(m.IdOf(c));
    seq.push_back(m.End());
    for (size_t i = 1; i < seq.size(); ++i) {
      const Id c = seq[i];
      if (c == m.Unknown()) continue;
      m.uni_[c] += weight;
      m.uni_total_ += weight;
      const Id b = seq[i - 1];
      if (b == m.Unknown()) continue;
      m.bi_[b * out + c] += weight;
      m.bi_total_[b] += weight;
      if (i < 2 || seq[i - 2] == m.Unknown()) continue;
      const int ab = seq[i - 2] * ctx + b;
      m.tri_[ab * out + c] += weight;
      m.tri_total_[ab] += weight;
    }
  }
  return m;
}

CharLM::Id CharLM::IdOf(std::string_view c) const {
  for (int i = 0; i < AlphabetSize(); ++i) {
    if (alphabet_[i] == c) return i;
  }
  return Unknown();
}

double CharLM::Cost(Id a, Id b, Id c) const {
  if (c < 0 || c > End()) return params_.unknown_cost;
  const int ctx = Ctx(), out = Out();
  double num = params_.lambda0 / out;
  double den = params_.lambda0;
  if (uni_total_ > 0) {
    num += params_.lambda1 * uni_[c] / uni_total_;
    den += params_.lambda1;
  }
  if (b >= 0 && b < ctx && b != Unknown() && bi_total_[b] > 0) {
    num += params_.lambda2 * bi_[b * out + c] / bi_total_[b];
    den += params_.lambda2;
    if (a >= 0 && a < ctx && a != Unknown()) {
      const int ab = a * ctx + b;
      if (tri_total_[ab] > 0) {
        num += params_.lambda3 * tri_[ab * out + c] / tri_total_[ab];
        den += params_.lambda3;
      }
    }
  }
  return -std::log(num / den);
}

double CharLM::Score(std::string_view text) const {
  if (text.empty()) throw InputError("character model score of empty text");
  Id a = Unknown(), b = Begin();
  double cost = 0;
  for (const std::string& ch : SplitUtf8(text)) {
    const Id c = IdOf(ch);
    cost += Cost(a, b, c);
    a = b;
    b = c;
  }
  return cost + Cost(a, b, End());
}

namespace {

void WriteDoubles(std::ostream& os, const std::vector<double>& v) {
  io::Write<uint32_t>(os, static_cast<uint32_t>(v.size()));
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::vector<double> ReadDoubles(std::istream& is) {
  std::vector<double> v(io::Read<uint32_t>(is));
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!is) throw ParseError("truncated character model");
  return v;
}

}  // namespace

void CharLM::Write(std::ostream& os) const {
  io::WriteMagic(os, "CHLM1");
  io::Write<uint32_t>(os, static_cast<uint32_t>(alphabet_.size()));
  for (const auto& c : alphabet_) io::WriteString(os, c);
  for (double v : {params_.lambda3, params_.lambda2, params_.lambda1,
                   params_.lambda0, params_.unknown_cost, uni_total_}) {
    io::Write<double>(os, v);
  }
  WriteDoubles(os, uni_);
  WriteDoubles(os, bi_);
  WriteDoubles(os, tri_);
  WriteDoubles(os, bi_total_);
  WriteDoubles(os, tri_total_);
}

CharLM CharLM::Read(std::istream& is) {
  io::ExpectMagic(is, "CHLM1");
  CharLM m;
  m.alphabet_.resize(io::Read<uint32_t>(is));
  for (auto& c : m.alphabet_) c = io::ReadString(is);
  m.params_.lambda3 = io::Read<double>(is);
  m.params_.lambda2 = io::Read<double>(is);
  m.params_.lambda1 = io::Read<double>(is);
  m.params_.lambda0 = io::Read<double>(is);
  m.params_.unknown_cost = io::Read<double>(is);
  m.uni_total_ = io::Read<double>(is);
  m.uni_ = ReadDoubles(is);
  m.bi_ = ReadDoubles(is);
  m.tri_ = ReadDoubles(is);
  m.bi_total_ = ReadDoubles(is);
  m.tri_total_ = ReadDoubles(is);
  const size_t ctx = m.alphabet_.size() + 3, out = m.alphabet_.size() + 1;
  if (m.uni_.size() != out || m.bi_.size() != ctx * out ||
      m.tri_.size() != ctx * ctx * out || m.bi_total_.size() != ctx ||
      m.tri_total_.size() != ctx * ctx) {
    throw ParseError("character model tables have the wrong size");
  }
  return m;
}

}  // namespace fstkey
