// src/common.cc

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

#include "augkit/common.h"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>

namespace augkit {

namespace {
std::atomic<bool> g_warnings_enabled{true};

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
}  // namespace

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMissingFile: return "missing file";
    case ErrorKind::kDuplicateId: return "duplicate id";
    case ErrorKind::kDanglingReference: return "dangling reference";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kRange: return "range error";
    case ErrorKind::kOverlap: return "overlap";
    case ErrorKind::kConfidenceRequired: return "confidence required";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kIo: return "I/O error";
    case ErrorKind::kPrecondition: return "precondition violated";
    case ErrorKind::kBounds: return "bounds error";
    case ErrorKind::kDegenerateSegment: return "degenerate segment";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kCyclicLattice: return "cyclic lattice";
    case ErrorKind::kReference: return "reference error";
    case ErrorKind::kNoPath: return "no path";
    case ErrorKind::kMissingScore: return "missing score";
  }
  return "error";
}

internal::WarningBuilder::~WarningBuilder() {
  if (g_warnings_enabled.load(std::memory_order_relaxed))
    std::cerr << "WARNING (augkit) " << stream_.str() << '\n';
}

void SetWarningsEnabled(bool enabled) { g_warnings_enabled = enabled; }
bool WarningsEnabled() { return g_warnings_enabled; }

std::vector<std::string> SplitFields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !IsSpace(line[j])) ++j;
    if (j > i) fields.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::string ReadFileToString(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) AUGKIT_FAIL(kMissingFile) << "missing file: " << path;
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void WriteStringToFile(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) AUGKIT_FAIL(kIo) << "cannot open for writing: " << path;
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) AUGKIT_FAIL(kIo) << "write failed: " << path;
}

bool ParseDouble(std::string_view token, double *out) {
  if (token.empty()) return false;
  const char *first = token.data();
  const char *last = token.data() + token.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last;
}

bool ParseInt64(std::string_view token, std::int64_t *out) {
  if (token.empty()) return false;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), *out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::string FormatShortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string FormatCentiseconds(double seconds) {
  std::int64_t cents = RoundToInt64(seconds * 100.0);
  bool negative = cents < 0;
  std::uint64_t mag = negative ? static_cast<std::uint64_t>(-cents)
                               : static_cast<std::uint64_t>(cents);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%llu.%02llu", negative ? "-" : "",
                static_cast<unsigned long long>(mag / 100),
                static_cast<unsigned long long>(mag % 100));
  return buf;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key) {
  return SplitMix64(seed + 0x9E3779B97F4A7C15ULL * Fnv1a64(key));
}

std::int64_t Rng::UniformInt(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) AUGKIT_FAIL(kPrecondition) << "UniformInt: empty range";
  std::uint64_t span = static_cast<std::uint64_t>(hi) -
                       static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // Rejection keeps the draw unbiased.
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % span + 1) % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return lo + static_cast<std::int64_t>(x % span);
}

}  // namespace augkit
