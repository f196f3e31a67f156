// a2w/common.h

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

#ifndef A2W_COMMON_H_
#define A2W_COMMON_H_

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace a2w {

// All internal math runs in double; file formats store 32-bit floats.

// Finite log-zero sentinel. Probabilities whose log would underflow the
// double range (below exp(-745)) are flushed to this value, which keeps the
// lattice recursions free of -inf - -inf = NaN traps.
constexpr double kLogZero = -1e30;

inline double SafeLog(double p) {
  if (p <= 0.0) return kLogZero;
  double l = std::log(p);
  return l < -745.0 ? kLogZero : l;
}

inline double LogAdd(double a, double b) {
  if (a <= kLogZero) return b;
  if (b <= kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// Deterministic RNG. The uniform/gaussian transforms are written out here
// instead of using <random> distributions, whose output is not pinned by the
// standard; checkpoints and synthetic corpora must be bit-reproducible for a
// given seed across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double NextUnit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double NextUniform(double lo, double hi) { return lo + (hi - lo) * NextUnit(); }

  // Integer in [0, n). n must be positive.
  int NextInt(int n) { return static_cast<int>(engine_() % static_cast<uint64_t>(n)); }

  // Standard normal via Box-Muller.
  double NextGaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = NextUnit();
    double u2 = NextUnit();
    // Avoid log(0).
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Derives an independent stream, so sub-tasks can draw without disturbing
  // the parent sequence layout.
  Rng Fork() { return Rng(NextU64() ^ 0x9e3779b97f4a7c15ull); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// FNV-1a, used to fingerprint vocabularies inside checkpoints.
inline uint64_t Fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Little-endian primitive IO for the binary file formats.
void WriteU8(std::ostream& os, uint8_t v);
void WriteU32(std::ostream& os, uint32_t v);
void WriteU64(std::ostream& os, uint64_t v);
void WriteF32(std::ostream& os, float v);
uint8_t ReadU8(std::istream& is);
uint32_t ReadU32(std::istream& is);
uint64_t ReadU64(std::istream& is);
float ReadF32(std::istream& is);

std::string Lowercase(const std::string& s);
std::vector<std::string> SplitWords(const std::string& line);
std::string JoinWords(const std::vector<std::string>& words);

}  // namespace a2w

// Error reporting used across the library: builds the message with stream
// syntax and throws std::runtime_error.
#define A2W_ERR(msg_expr)                     \
  do {                                        \
    std::ostringstream a2w_err_os_;           \
    a2w_err_os_ << msg_expr;                  \
    throw std::runtime_error(a2w_err_os_.str()); \
  } while (0)

#define A2W_CHECK(cond, msg_expr) \
  do {                            \
    if (!(cond)) A2W_ERR(msg_expr); \
  } while (0)

#endif  // A2W_COMMON_H_
