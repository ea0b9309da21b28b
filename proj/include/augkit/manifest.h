// include/augkit/manifest.h

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

#ifndef AUGKIT_MANIFEST_H_
#define AUGKIT_MANIFEST_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace augkit {

struct Segment {
  std::string utt_id;
  std::string recording_id;
  double start = 0.0;  // seconds
  double end = 0.0;    // seconds, > start
  std::string speaker_id;

  bool operator==(const Segment &) const = default;
};

/// A Kaldi-style data directory: wav.scp, segments, text, utt2spk.
///
/// When `segments` is empty the corpus is unsegmented and every recording is
/// one utterance with the same id.
struct Manifest {
  std::map<std::string, std::string> recordings;  // recording-id -> path
  std::map<std::string, Segment> segments;        // keyed by utt_id
  std::map<std::string, std::vector<std::string>> transcripts;
  std::map<std::string, std::string> utt2spk;

  bool segmented() const { return !segments.empty(); }
  bool operator==(const Manifest &) const = default;
};

/// An utterance resolved against its recording.
struct Utterance {
  std::string utt_id;
  std::string recording_id;
  std::string audio_path;
  double start = 0.0;
  double end = -1.0;  // < 0: whole recording
  std::string speaker_id;
};

/// Utterances in utt-id order.
std::vector<Utterance> ListUtterances(const Manifest &manifest);
std::vector<std::string> UtteranceIds(const Manifest &manifest);

/// Checks every Manifest invariant; throws kDanglingReference / kRange.
void ValidateManifest(const Manifest &manifest);

/// Reads <root>/{wav.scp,text} and optionally {segments,utt2spk}.
Manifest ParseDataDir(const std::string &root);

/// Writes wav.scp, text, utt2spk and (for segmented corpora) segments, sorted
/// by key. Times are printed with two decimals.
void WriteDataDir(const Manifest &manifest, const std::string &root);

struct WordAlignment {
  std::string utt_id;
  double start = 0.0;
  double duration = 0.0;
  std::string word;
  std::optional<double> confidence;

  double end() const { return start + duration; }
  bool operator==(const WordAlignment &) const = default;
};

/// Two words overlap only when the later one starts more than this before
/// the earlier one ends (CTM times carry 10 ms resolution).
inline constexpr double kOverlapTolerance = 1e-6;

/// Parses "utt channel start duration word [confidence]" lines. Rows come
/// back in file order; rows of one utterance must not overlap.
std::vector<WordAlignment> ParseCtm(std::string_view text);
std::vector<WordAlignment> ParseCtmFile(const std::string &path);

/// Channel is written as "1". Start and end are rounded to 10 ms
/// independently so adjacent words stay adjacent.
std::string WriteCtm(const std::vector<WordAlignment> &rows);

/// Groups rows by utterance, each group sorted by start.
std::map<std::string, std::vector<WordAlignment>> GroupByUtterance(
    const std::vector<WordAlignment> &rows);

struct CleanseStats {
  std::size_t kept = 0;
  std::size_t dropped_unaligned = 0;
  std::size_t dropped_low_confidence = 0;
  std::size_t dropped_few_words = 0;
};

inline constexpr double kDefaultMinAvgConfidence = 0.9;

/// Keeps utterances whose unweighted mean word confidence is at least
/// `min_avg_conf` and that have at least `min_words` aligned words.
/// Utterances without any CTM row are dropped with a warning.
Manifest Cleanse(const Manifest &manifest,
                 const std::vector<WordAlignment> &alignments,
                 double min_avg_conf, std::size_t min_words,
                 CleanseStats *stats = nullptr);

}  // namespace augkit

#endif  // AUGKIT_MANIFEST_H_
