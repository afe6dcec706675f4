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

#ifndef FSTKEY_TEXT_H_
#define FSTKEY_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace fstkey {

// Splits UTF-8 text into code points (each as its own byte string). Invalid
// bytes come out one at a time.
std::vector<std::string> SplitUtf8(std::string_view text);

// Whitespace tokenization.
std::vector<std::string> SplitWords(std::string_view text);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// ASCII lowercasing; other bytes pass through.
std::string AsciiLower(std::string_view s);

}  // namespace fstkey

#endif  // FSTKEY_TEXT_H_
