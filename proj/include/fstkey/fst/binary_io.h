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

#ifndef FSTKEY_FST_BINARY_IO_H_
#define FSTKEY_FST_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>

#include "fstkey/errors.h"

namespace fstkey::io {

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

template <typename T>
  requires std::is_arithmetic_v<T>
void Write(std::ostream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
  requires std::is_arithmetic_v<T>
T Read(std::istream& is) {
  T value{};
  if (!is.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw ParseError("unexpected end of binary stream");
  }
  return value;
}

inline void WriteString(std::ostream& os, const std::string& s) {
  Write<uint32_t>(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string ReadString(std::istream& is) {
  const auto n = Read<uint32_t>(is);
  std::string s(n, '\0');
  if (n > 0 && !is.read(s.data(), n)) {
    throw ParseError("truncated string in binary stream");
  }
  return s;
}

inline void WriteMagic(std::ostream& os, const char* magic) {
  os.write(magic, static_cast<std::streamsize>(std::strlen(magic)));
}

inline void ExpectMagic(std::istream& is, const char* magic) {
  const size_t n = std::strlen(magic);
  std::string got(n, '\0');
  if (!is.read(got.data(), static_cast<std::streamsize>(n)) || got != magic) {
    throw ParseError(std::string("bad magic, expected ") + magic);
  }
}

}  // namespace fstkey::io

#endif  // FSTKEY_FST_BINARY_IO_H_
