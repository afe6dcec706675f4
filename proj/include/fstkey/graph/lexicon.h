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

#ifndef FSTKEY_GRAPH_LEXICON_H_
#define FSTKEY_GRAPH_LEXICON_H_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fstkey/fst/fst.h"
#include "fstkey/graph/alphabet.h"

namespace fstkey {

inline constexpr char kLiteralMarker[] = "<lit/>";
inline constexpr char kCharWordEnd[] = "<cw/>";
inline std::string LiteralWordSymbol(const std::string& key) { return "<lit>" + key; }
inline std::string CharWordSymbol(const std::string& key) { return "<cw>" + key; }

struct LexiconEntry {
  std::string word;
  // Key codes; derived from the lowercased word when empty.
  std::vector<std::string> keys;
};

struct LexiconOptions {
  bool optional_apostrophe = true;
  bool optional_repeated_key = true;
  bool optional_space = false;
  double optional_penalty = 0.7;
  bool literal = true;
  bool char_words = true;
};

// Which part of the lexicon a state belongs to.
enum class LexTrack : uint8_t {
  kBoundary,    // between words
  kWord,        // inside the word trie
  kWordEnd,     // after a word label
  kLiteral,     // inside a literal run
  kLiteralEnd,  // after the literal marker
  kCharWord,    // spelling a dynamic word
};

struct LexiconFst {
  WeightedFst fst;
  std::shared_ptr<const SymbolTable> words;
  std::vector<LexTrack> tracks;  // per state
};

// Key sequence for a word: its lowercased code points. Throws ConfigError
// when one is not a key.
std::vector<std::string> KeysForWord(const std::string& word,
                                     const KeyAlphabet& alphabet);

// Word list file: one word per line, optional tab-separated count (default
// 1). Blank lines are skipped.
std::vector<std::pair<std::string, double>> ReadWordList(const std::string& path);

// Key-to-word trie closed under <space>. Output symbols: <eps>, the words in
// entry order, then one literal word per key, the literal marker, one
// character word per key and the character-word end. Throws ConfigError for
// a word listed twice with different keys or an untypeable word.
LexiconFst BuildLexiconFst(const std::vector<LexiconEntry>& entries,
                           const KeyAlphabet& alphabet,
                           const LexiconOptions& options = {});

}  // namespace fstkey

#endif  // FSTKEY_GRAPH_LEXICON_H_
