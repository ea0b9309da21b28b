// include/augkit/spec-augment.h

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

#ifndef AUGKIT_SPEC_AUGMENT_H_
#define AUGKIT_SPEC_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "augkit/common.h"
#include "augkit/features.h"

namespace augkit {

enum class MaskFill {
  kValue,          // SpecAugmentConfig::mask_value
  kDimensionMean,  // per-dimension mean of the input matrix
};

/// Frequency and time masking without time warping. Apply after CMVN when
/// using the default fill of 0, which then equals the feature mean.
struct SpecAugmentConfig {
  int num_freq_masks = 1;     // mF
  int max_freq_width = 10;    // F, bins
  int num_time_masks = 1;     // mT
  int max_time_width = 20;    // T, frames
  double max_time_fraction = 0.05;  // p: time mask width <= ceil(p * frames)
  double mask_value = 0.0;
  MaskFill fill = MaskFill::kValue;
  std::uint64_t seed = kDefaultSeed;

  void Validate() const;
};

struct Band {
  std::size_t start;
  std::size_t width;
};

struct MaskLayout {
  std::vector<Band> freq_bands;  // over dims, full time extent
  std::vector<Band> time_bands;  // over frames, full frequency extent
};

/// Cap on the width of a single time mask for a matrix with `frames` rows.
std::size_t TimeMaskCap(const SpecAugmentConfig &cfg, std::size_t frames);

/// Draws the masks. Frequency masks first, then time masks, each as
/// (width ~ U{0..cap}, start ~ U{0..extent - width}) from one Rng(seed).
MaskLayout DrawMasks(std::size_t frames, std::size_t dims,
                     const SpecAugmentConfig &cfg);

FeatureMatrix SpecAugment(const FeatureMatrix &m, const SpecAugmentConfig &cfg,
                          MaskLayout *layout = nullptr);

}  // namespace augkit

#endif  // AUGKIT_SPEC_AUGMENT_H_
