// include/augkit/pipeline.h

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

#ifndef AUGKIT_PIPELINE_H_
#define AUGKIT_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "augkit/common.h"
#include "augkit/features.h"
#include "augkit/manifest.h"
#include "augkit/spec-augment.h"
#include "augkit/word-perturb.h"

namespace augkit {

struct CleanseOptions {
  double min_avg_conf = kDefaultMinAvgConfidence;
  std::size_t min_words = 0;
};

struct PipelineConfig {
  std::uint64_t global_seed = kDefaultSeed;
  bool enable_usp = true;
  bool enable_wsp = true;
  std::pair<double, double> wsp_fractions{kWspFractionA, kWspFractionB};
  WordPerturbOptions wsp_options;
  std::optional<SpecAugmentConfig> specaugment;  // its seed is ignored
  std::optional<CleanseOptions> cleanse;
  std::optional<std::string> vtln_map;
  FrontendConfig frontend;
  VtlnConfig vtln;  // band settings; the warp comes from vtln_map
  CmvnMode cmvn_mode = CmvnMode::kSpeaker;
  int workers = 1;

  void Validate() const;
};

struct UtteranceError {
  std::string utt_id;
  std::string message;
};

/// Run report; serialized as JSON next to the outputs.
struct RunSummary {
  std::string command;
  std::size_t input_utterances = 0;
  std::size_t output_utterances = 0;
  std::size_t cleansed_away = 0;
  std::size_t clipped_samples = 0;
  std::vector<std::string> wsp_skipped;  // no CTM rows
  std::vector<UtteranceError> errors;

  std::string ToJson() const;
};

/// Per-utterance random stream root.
std::uint64_t UtteranceSeed(std::uint64_t global_seed, std::string_view utt_id);
/// Seed for the SpecAugment masks of one utterance.
std::uint64_t SpecAugmentSeed(std::uint64_t global_seed,
                              std::string_view utt_id);

/// Id suffix for a derived copy, e.g. "-sp0.9" or "-wsp80".
std::string SpeedSuffix(double alpha);
std::string WspSuffix(double fraction_fast);

/// Writes the original utterances plus their derived copies: audio under
/// <outdir>/wav/<utt>.wav, the data directory files in <outdir>, and
/// time-scaled alignments in <outdir>/ctm. Each derived utterance is its own
/// recording. Utterances with no CTM rows get no word-level copies. Per
/// utterance failures are collected in the summary and their copies omitted.
Manifest ExpandCorpus(const Manifest &manifest,
                      const std::vector<WordAlignment> &ctm,
                      const PipelineConfig &cfg, const std::string &outdir,
                      RunSummary *summary = nullptr);

/// MFCC -> CMVN -> optional SpecAugment for every utterance; failed
/// utterances are left out of the result and recorded in the summary.
FeatureList FeaturizeCorpus(const Manifest &manifest, const PipelineConfig &cfg,
                            RunSummary *summary = nullptr);

/// Runs body(i) for i in [0, n) on `workers` threads.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)> &body);

}  // namespace augkit

#endif  // AUGKIT_PIPELINE_H_
