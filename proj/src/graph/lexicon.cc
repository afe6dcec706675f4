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

#include "fstkey/graph/lexicon.h"

#include <fstream>
#include <map>

#include "fstkey/errors.h"
#include "fstkey/text.h"

namespace fstkey {

std::vector<std::string> KeysForWord(const std::string& word,
                                     const KeyAlphabet& alphabet) {
  std::vector<std::string> keys;
  for (const std::string& c : SplitUtf8(AsciiLower(word))) {
    if (alphabet.IndexOf(c) < 0) {
      throw ConfigError("word '" + word + "' has untypeable character '" + c + "'");
    }
    keys.push_back(c);
  }
  if (keys.empty()) throw ConfigError("empty word in lexicon");
  return keys;
}

std::vector<std::pair<std::string, double>> ReadWordList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open word list " + path);
  std::vector<std::pair<std::string, double>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const size_t tab = line.find('\t');
    std::string word = line.substr(0, tab);
    double count = 1;
    if (tab != std::string::npos) {
      try {
        count = std::stod(line.substr(tab + 1));
      } catch (const std::exception&) {
        throw ParseError("bad count in word list", lineno);
      }
    }
    out.emplace_back(std::move(word), count);
  }
  return out;
}

LexiconFst BuildLexiconFst(const std::vector<LexiconEntry>& entries,
                           const KeyAlphabet& alphabet,
                           const LexiconOptions& options) {
  auto words = std::make_shared<SymbolTable>();
  std::map<std::string, std::vector<std::string>> seen;
  std::vector<std::pair<Label, std::vector<std::string>>> items;
  for (const LexiconEntry& e : entries) {
    if (e.word.empty() || e.word[0] == '<') {
      throw ConfigError("word '" + e.word + "' is empty or uses the reserved '<' prefix");
    }
    std::vector<std::string> keys =
        e.keys.empty() ? KeysForWord(e.word, alphabet) : e.keys;
    for (const std::string& k : keys) {
      if (alphabet.IndexOf(k) < 0) {
        throw ConfigError("word '" + e.word + "' uses unknown key '" + k + "'");
      }
    }
    auto [it, inserted] = seen.emplace(e.word, keys);
    if (!inserted) {
      if (it->second != keys) {
        throw ConfigError("word '" + e.word + "' listed with two key sequences");
      }
      continue;
    }
    items.emplace_back(words->AddSymbol(e.word), std::move(keys));
  }
  const int k = alphabet.NumKeys();
  std::vector<Label> lit(k), cw(k);
  for (int i = 0; i < k; ++i) lit[i] = words->AddSymbol(LiteralWordSymbol(alphabet.key(i)));
  const Label marker = words->AddSymbol(kLiteralMarker);
  for (int i = 0; i < k; ++i) cw[i] = words->AddSymbol(CharWordSymbol(alphabet.key(i)));
  const Label cw_end = words->AddSymbol(kCharWordEnd);

  LexiconFst lex;
  WeightedFst& f = lex.fst;
  auto add = [&](LexTrack t) {
    lex.tracks.push_back(t);
    return f.AddState();
  };
  const StateId start = add(LexTrack::kBoundary);
  const StateId word_end = add(LexTrack::kWordEnd);
  f.SetStart(start);
  f.SetFinal(start, Weight::One());
  f.SetFinal(word_end, Weight::One());
  f.AddArc(word_end, {alphabet.SpaceLabel(), kEpsilon, Weight::One(), start});
  if (options.optional_space) {
    f.AddArc(word_end, {kEpsilon, kEpsilon, Weight(options.optional_penalty), start});
  }

  const Weight bypass(options.optional_penalty);
  std::map<std::pair<StateId, int>, StateId> child;
  for (const auto& [label, keys] : items) {
    StateId s = start;
    for (size_t i = 0; i < keys.size(); ++i) {
      const int key = alphabet.IndexOf(keys[i]);
      auto [it, inserted] = child.try_emplace({s, key}, kNoState);
      if (inserted) {
        it->second = add(LexTrack::kWord);
        f.AddArc(s, {alphabet.KeyLabel(key), kEpsilon, Weight::One(), it->second});
        const bool optional =
            (options.optional_apostrophe && keys[i] == "'") ||
            (options.optional_repeated_key && i > 0 && keys[i] == keys[i - 1]);
        if (optional) f.AddArc(s, {kEpsilon, kEpsilon, bypass, it->second});
      }
      s = it->second;
    }
    f.AddArc(s, {kEpsilon, label, Weight::One(), word_end});
  }

  if (options.literal) {
    const StateId run = add(LexTrack::kLiteral);
    const StateId done = add(LexTrack::kLiteralEnd);
    for (int i = 0; i < k; ++i) {
      f.AddArc(start, {alphabet.LiteralKeyLabel(i), lit[i], Weight::One(), run});
      f.AddArc(run, {alphabet.LiteralKeyLabel(i), lit[i], Weight::One(), run});
    }
    f.AddArc(run, {kEpsilon, marker, Weight::One(), done});
    f.SetFinal(done, Weight::One());
    f.AddArc(done, {alphabet.SpaceLabel(), kEpsilon, Weight::One(), start});
  }
  if (options.char_words) {
    const StateId spell = add(LexTrack::kCharWord);
    f.AddArc(start, {kEpsilon, kEpsilon, Weight::One(), spell});
    for (int i = 0; i < k; ++i) {
      f.AddArc(spell, {alphabet.KeyLabel(i), cw[i], Weight::One(), spell});
    }
    f.AddArc(spell, {kEpsilon, cw_end, Weight::One(), word_end});
  }
  f.SetInputSymbols(alphabet.key_symbols());
  f.SetOutputSymbols(words);
  lex.words = words;
  return lex;
}

}  // namespace fstkey
