// include/augkit/audio.h

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

#ifndef AUGKIT_AUDIO_H_
#define AUGKIT_AUDIO_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace augkit {

/// Mono waveform with samples normalized to [-1, 1].
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 16000;

  double Duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
  bool operator==(const Waveform &) const = default;
};

/// Parses a RIFF/WAVE PCM16 mono file. Sample i is int16 / 32768.
Waveform ReadWav(std::span<const std::uint8_t> bytes);
/// Canonical 44-byte header followed by little-endian PCM16 data.
/// Quantization is round(x * 32768), half away from zero, clamped to int16.
std::vector<std::uint8_t> WriteWav(const Waveform &wave);

Waveform ReadWavFile(const std::string &path);
void WriteWavFile(const std::string &path, const Waveform &wave);

/// Clamps every sample to [-1, 1]; returns the number of samples changed.
std::size_t ClipInPlace(std::vector<float> *samples);

/// Samples [round(start * rate), min(round(end * rate), size)).
/// A negative end means "to the end of the waveform".
Waveform ExtractSegment(const Waveform &wave, double start, double end);

}  // namespace augkit

#endif  // AUGKIT_AUDIO_H_
