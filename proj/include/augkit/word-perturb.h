// include/augkit/word-perturb.h

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

#ifndef AUGKIT_WORD_PERTURB_H_
#define AUGKIT_WORD_PERTURB_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "augkit/audio.h"
#include "augkit/manifest.h"

namespace augkit {

struct WordFactor {
  std::size_t word_index;
  double alpha;  // speaking-rate multiplier for this word
};

/// Per-word speed factors for one utterance. Exactly
/// round(fraction_fast * W) words are sped up (alpha 1.1); the rest are slowed
/// down (alpha 0.9).
struct PerturbPlan {
  std::vector<WordFactor> assignments;  // one per word, in word order
  std::uint64_t seed = 0;
  double fraction_fast = 0.0;

  std::size_t NumFast() const;
};

inline constexpr double kWordFast = 1.1;
inline constexpr double kWordSlow = 0.9;

/// Throws kPrecondition unless rows are sorted by start and non-overlapping.
void CheckWordOrder(const std::vector<WordAlignment> &words);

/// Draws a uniformly random subset of round(fraction_fast * W) words to speed
/// up. Deterministic in (words, fraction_fast, seed).
PerturbPlan MakePlan(const std::vector<WordAlignment> &words,
                     double fraction_fast, std::uint64_t seed);

struct WordPerturbOptions {
  /// Linear crossfade across every splice point, in milliseconds. With the
  /// default 0 the inter-word gaps are copied bit-exactly.
  double crossfade_ms = 0.0;
};

struct PerturbedUtterance {
  Waveform wave;
  std::vector<WordAlignment> words;
  std::size_t clipped = 0;
};

/// Splices the waveform back together with every word segment resampled by
/// 1/alpha and every gap kept verbatim. Word boundaries are snapped to
/// round(time * rate) once, on the original timeline. Returned alignments
/// carry the new starts and durations.
PerturbedUtterance ApplyPlan(const Waveform &wave,
                             const std::vector<WordAlignment> &words,
                             const PerturbPlan &plan,
                             const WordPerturbOptions &opts = {});

inline constexpr double kWspFractionA = 0.8;
inline constexpr double kWspFractionB = 0.2;

/// Copy A speeds up 80% of the words, copy B 20%. Plan seeds are
/// DeriveSeed(seed, "wsp80") and DeriveSeed(seed, "wsp20").
std::pair<PerturbedUtterance, PerturbedUtterance> MakeWspCopies(
    const Waveform &wave, const std::vector<WordAlignment> &words,
    std::uint64_t seed, const WordPerturbOptions &opts = {});

/// Seed used for the plan at `fraction` in a WSP copy ("wsp" + percent).
std::uint64_t WspPlanSeed(std::uint64_t seed, double fraction);

}  // namespace augkit

#endif  // AUGKIT_WORD_PERTURB_H_
