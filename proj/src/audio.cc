// src/audio.cc

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

#include "augkit/audio.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string_view>

#include "augkit/common.h"

namespace augkit {

namespace {

std::uint32_t ReadU32(const std::uint8_t *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t ReadU16(const std::uint8_t *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::vector<std::uint8_t> *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutU16(std::vector<std::uint8_t> *out, std::uint16_t v) {
  out->push_back(static_cast<std::uint8_t>(v & 0xFF));
  out->push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutTag(std::vector<std::uint8_t> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

std::int16_t Quantize(float x) {
  double scaled = std::round(static_cast<double>(x) * 32768.0);
  scaled = std::clamp(scaled, -32768.0, 32767.0);
  return static_cast<std::int16_t>(scaled);
}

}  // namespace

Waveform ReadWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    AUGKIT_FAIL(kFormat) << "RIFF chunk: not a RIFF/WAVE container";

  bool have_fmt = false;
  Waveform wave;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    std::string_view tag(reinterpret_cast<const char *>(bytes.data() + pos), 4);
    std::uint32_t size = ReadU32(bytes.data() + pos + 4);
    std::size_t body = pos + 8;
    if (tag == "fmt ") {
      if (size < 16 || body + size > bytes.size())
        AUGKIT_FAIL(kFormat) << "fmt chunk: truncated";
      std::uint16_t codec = ReadU16(bytes.data() + body);
      std::uint16_t channels = ReadU16(bytes.data() + body + 2);
      std::uint32_t rate = ReadU32(bytes.data() + body + 4);
      std::uint16_t bits = ReadU16(bytes.data() + body + 14);
      if (codec != 1)
        AUGKIT_FAIL(kFormat) << "fmt chunk: codec " << codec
                             << " is not PCM (1)";
      if (channels != 1)
        AUGKIT_FAIL(kFormat) << "fmt chunk: mono required, found "
                             << channels << " channels";
      if (bits != 16)
        AUGKIT_FAIL(kFormat) << "fmt chunk: 16-bit samples required, found "
                             << bits;
      if (rate == 0 || rate > 0x7FFFFFFF)
        AUGKIT_FAIL(kFormat) << "fmt chunk: invalid sample rate " << rate;
      wave.sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) AUGKIT_FAIL(kFormat) << "data chunk: precedes fmt chunk";
      if (body + size > bytes.size())
        AUGKIT_FAIL(kFormat) << "data chunk: truncated (declares " << size
                             << " bytes, " << bytes.size() - body
                             << " present)";
      if (size % 2 != 0)
        AUGKIT_FAIL(kFormat) << "data chunk: odd byte count " << size;
      std::size_t n = size / 2;
      wave.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<std::int16_t>(ReadU16(bytes.data() + body + 2 * i));
        wave.samples[i] = static_cast<float>(v / 32768.0);
      }
      return wave;
    }
    std::size_t next = body + size + (size & 1);
    if (next <= pos || next > bytes.size()) break;
    pos = next;
  }
  if (!have_fmt) AUGKIT_FAIL(kFormat) << "fmt chunk: missing";
  AUGKIT_FAIL(kFormat) << "data chunk: missing";
}

std::vector<std::uint8_t> WriteWav(const Waveform &wave) {
  if (wave.sample_rate <= 0)
    AUGKIT_FAIL(kPrecondition) << "invalid sample rate " << wave.sample_rate;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(wave.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_bytes);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, 1);  // mono
  PutU32(&out, static_cast<std::uint32_t>(wave.sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(wave.sample_rate) * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  PutTag(&out, "data");
  PutU32(&out, data_bytes);
  for (float x : wave.samples)
    PutU16(&out, static_cast<std::uint16_t>(Quantize(x)));
  return out;
}

Waveform ReadWavFile(const std::string &path) {
  std::string contents = ReadFileToString(path);
  try {
    return ReadWav(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t *>(contents.data()),
        contents.size()));
  } catch (const Error &e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void WriteWavFile(const std::string &path, const Waveform &wave) {
  std::vector<std::uint8_t> bytes = WriteWav(wave);
  WriteStringToFile(path, std::string_view(
                              reinterpret_cast<const char *>(bytes.data()),
                              bytes.size()));
}

std::size_t ClipInPlace(std::vector<float> *samples) {
  std::size_t clipped = 0;
  for (float &x : *samples) {
    if (x > 1.0f) {
      x = 1.0f;
      ++clipped;
    } else if (x < -1.0f) {
      x = -1.0f;
      ++clipped;
    }
  }
  return clipped;
}

Waveform ExtractSegment(const Waveform &wave, double start, double end) {
  const auto n = static_cast<std::int64_t>(wave.samples.size());
  std::int64_t first = std::clamp<std::int64_t>(
      RoundToInt64(start * wave.sample_rate), 0, n);
  std::int64_t last =
      end < 0 ? n
              : std::clamp<std::int64_t>(RoundToInt64(end * wave.sample_rate),
                                         first, n);
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.assign(wave.samples.begin() + first, wave.samples.begin() + last);
  return out;
}

}  // namespace augkit
