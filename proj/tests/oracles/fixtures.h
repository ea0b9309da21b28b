// tests/oracles/fixtures.h

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

#ifndef AUGKIT_TESTS_ORACLES_FIXTURES_H_
#define AUGKIT_TESTS_ORACLES_FIXTURES_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "augkit/audio.h"

namespace fixtures {

namespace fs = std::filesystem;

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("augkit-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const fs::path &path() const { return path_; }
  std::string operator/(const std::string &name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

inline augkit::Waveform Tone(double freq, double seconds, int rate = 16000,
                             double amp = 0.5) {
  augkit::Waveform w;
  w.sample_rate = rate;
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    w.samples[i] = static_cast<float>(amp * std::sin(2 * M_PI * freq * i / rate));
  return w;
}

inline augkit::Waveform Noise(std::size_t n, std::uint64_t seed,
                              double amp = 0.3, int rate = 16000) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  augkit::Waveform w;
  w.sample_rate = rate;
  w.samples.resize(n);
  for (float &s : w.samples) s = static_cast<float>(u(rng));
  return w;
}

inline void WriteText(const std::string &path, const std::string &text) {
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Synthetic corpus: `n` unsegmented recordings of noise with word
/// alignments (CTM with confidences) and transcripts, in `dir`.
/// Recording i lasts 0.6 + 0.05 * (i % 7) s and holds 1 + i % 4 words.
inline void MakeCorpus(const std::string &dir, int n, std::uint64_t seed = 7) {
  fs::create_directories(dir + "/audio");
  std::ostringstream scp, text, utt2spk, ctm;
  for (int i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "utt%03d", i);
    const double dur = 0.6 + 0.05 * (i % 7);
    const std::string wav = dir + "/audio/" + id + ".wav";
    augkit::WriteWavFile(
        wav, Noise(static_cast<std::size_t>(std::llround(dur * 16000)),
                   seed + i));
    scp << id << ' ' << wav << '\n';
    utt2spk << id << " spk" << i % 5 << '\n';
    text << id;
    const int words = 1 + i % 4;
    for (int w = 0; w < words; ++w) {
      text << " w" << w;
      ctm << id << " 1 " << 0.05 + 0.12 * w << " 0.10 w" << w << " 0.95\n";
    }
    text << '\n';
  }
  WriteText(dir + "/wav.scp", scp.str());
  WriteText(dir + "/text", text.str());
  WriteText(dir + "/utt2spk", utt2spk.str());
  WriteText(dir + "/ctm", ctm.str());
}

}  // namespace fixtures

#endif  // AUGKIT_TESTS_ORACLES_FIXTURES_H_
