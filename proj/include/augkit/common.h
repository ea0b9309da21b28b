// include/augkit/common.h

// Copyright 2026  The augkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AUGKIT_COMMON_H_
#define AUGKIT_COMMON_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace augkit {

enum class ErrorKind {
  kMissingFile,
  kDuplicateId,
  kDanglingReference,
  kParse,
  kRange,
  kOverlap,
  kConfidenceRequired,
  kFormat,
  kIo,
  kPrecondition,
  kBounds,
  kDegenerateSegment,
  kConfig,
  kCyclicLattice,
  kReference,
  kNoPath,
  kMissingScore,
};

const char *ErrorKindName(ErrorKind kind);

/// All toolkit failures are reported by throwing this type. The message is a
/// single line suitable for printing after "ERROR: ".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

namespace internal {
class ErrorBuilder {
 public:
  explicit ErrorBuilder(ErrorKind kind) : kind_(kind) {}
  template <typename T>
  ErrorBuilder &operator<<(const T &value) {
    stream_ << value;
    return *this;
  }
  [[noreturn]] void Throw() const { throw Error(kind_, stream_.str()); }

 private:
  ErrorKind kind_;
  std::ostringstream stream_;
};

class WarningBuilder {
 public:
  WarningBuilder() = default;
  ~WarningBuilder();
  template <typename T>
  WarningBuilder &operator<<(const T &value) {
    stream_ << value;
    return *this;
  }

 private:
  std::ostringstream stream_;
};
}  // namespace internal

/// Warnings go to stderr unless silenced (tests silence them).
void SetWarningsEnabled(bool enabled);
bool WarningsEnabled();

// Usage: AUGKIT_FAIL(kParse) << "bad token at line " << n;
#define AUGKIT_FAIL(kind)                                              \
  for (::augkit::internal::ErrorBuilder augkit_eb_(::augkit::ErrorKind::kind); \
       ; augkit_eb_.Throw())                                           \
  augkit_eb_

#define AUGKIT_WARN ::augkit::internal::WarningBuilder()

/// Splits on ASCII whitespace, dropping empty fields.
std::vector<std::string> SplitFields(std::string_view line);

/// Reads a whole file; throws kMissingFile if it cannot be opened.
std::string ReadFileToString(const std::string &path);
/// Throws kIo on failure.
void WriteStringToFile(const std::string &path, std::string_view contents);

bool ParseDouble(std::string_view token, double *out);
bool ParseInt64(std::string_view token, std::int64_t *out);

/// Shortest decimal form that reads back to the same double.
std::string FormatShortest(double value);

/// Fixed two-decimal form, rounding half away from zero ("0.125" -> "0.13").
std::string FormatCentiseconds(double seconds);

/// Round half away from zero.
inline std::int64_t RoundToInt64(double x) { return std::llround(x); }

// Seeds.
//
// Per-item random streams are seeded with
//   DeriveSeed(seed, key) = SplitMix64(seed + 0x9E3779B97F4A7C15 * Fnv1a64(key))
// so that results depend only on the global seed and the item key (usually an
// utterance id), never on processing order.
std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t Fnv1a64(std::string_view bytes);
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key);

/// Default seed used by every randomized command when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20200925;

/// mt19937_64 with a portable bounded-integer draw (std distributions are not
/// reproducible across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on the closed range [lo, hi]; requires lo <= hi.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  std::uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace augkit

#endif  // AUGKIT_COMMON_H_
