// a2w/common.cc

// Copyright 2026  The a2w authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "a2w/common.h"

#include <cctype>
#include <cstring>
#include <istream>
#include <ostream>

namespace a2w {

void WriteU8(std::ostream& os, uint8_t v) {
  os.put(static_cast<char>(v));
}

void WriteU32(std::ostream& os, uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(buf, 4);
}

void WriteU64(std::ostream& os, uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(buf, 8);
}

void WriteF32(std::ostream& os, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  WriteU32(os, bits);
}

uint8_t ReadU8(std::istream& is) {
  int c = is.get();
  A2W_CHECK(c != EOF, "unexpected end of file");
  return static_cast<uint8_t>(c);
}

uint32_t ReadU32(std::istream& is) {
  char buf[4];
  is.read(buf, 4);
  A2W_CHECK(is.gcount() == 4, "unexpected end of file");
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<uint8_t>(buf[i]);
  return v;
}

uint64_t ReadU64(std::istream& is) {
  char buf[8];
  is.read(buf, 8);
  A2W_CHECK(is.gcount() == 8, "unexpected end of file");
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<uint8_t>(buf[i]);
  return v;
}

float ReadF32(std::istream& is) {
  uint32_t bits = ReadU32(is);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

std::string Lowercase(const std::string& s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> SplitWords(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream iss(line);
  std::string w;
  while (iss >> w) words.push_back(w);
  return words;
}

std::string JoinWords(const std::vector<std::string>& words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

}  // namespace a2w
