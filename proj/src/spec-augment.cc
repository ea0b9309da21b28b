// src/spec-augment.cc

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

#include "augkit/spec-augment.h"

#include <algorithm>
#include <cmath>

namespace augkit {

void SpecAugmentConfig::Validate() const {
  if (num_freq_masks < 0 || num_time_masks < 0)
    AUGKIT_FAIL(kConfig) << "mask counts must be >= 0";
  if (max_freq_width < 0 || max_time_width < 0)
    AUGKIT_FAIL(kConfig) << "mask widths must be >= 0";
  if (!(max_time_fraction >= 0.0 && max_time_fraction <= 1.0))
    AUGKIT_FAIL(kConfig) << "max_time_fraction must be in [0,1]";
}

std::size_t TimeMaskCap(const SpecAugmentConfig &cfg, std::size_t frames) {
  const auto by_fraction = static_cast<std::size_t>(
      std::ceil(cfg.max_time_fraction * static_cast<double>(frames)));
  return std::min({static_cast<std::size_t>(cfg.max_time_width), by_fraction,
                   frames});
}

MaskLayout DrawMasks(std::size_t frames, std::size_t dims,
                     const SpecAugmentConfig &cfg) {
  cfg.Validate();
  if (static_cast<std::size_t>(cfg.max_freq_width) > dims)
    AUGKIT_FAIL(kConfig) << "max frequency mask width " << cfg.max_freq_width
                         << " exceeds feature dimension " << dims;
  Rng rng(cfg.seed);
  MaskLayout layout;
  for (int i = 0; i < cfg.num_freq_masks; ++i) {
    auto width = static_cast<std::size_t>(rng.UniformInt(0, cfg.max_freq_width));
    auto start = static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<std::int64_t>(dims - width)));
    layout.freq_bands.push_back({start, width});
  }
  const std::size_t cap = TimeMaskCap(cfg, frames);
  for (int i = 0; i < cfg.num_time_masks; ++i) {
    auto width = static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<std::int64_t>(cap)));
    auto start = static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<std::int64_t>(frames - width)));
    layout.time_bands.push_back({start, width});
  }
  return layout;
}

FeatureMatrix SpecAugment(const FeatureMatrix &m, const SpecAugmentConfig &cfg,
                          MaskLayout *layout_out) {
  if (m.empty()) AUGKIT_FAIL(kPrecondition) << "SpecAugment on empty matrix";
  const std::size_t frames = m.rows(), dims = m.cols();
  MaskLayout layout = DrawMasks(frames, dims, cfg);

  std::vector<double> fill(dims, cfg.mask_value);
  if (cfg.fill == MaskFill::kDimensionMean) {
    std::fill(fill.begin(), fill.end(), 0.0);
    for (std::size_t r = 0; r < frames; ++r)
      for (std::size_t d = 0; d < dims; ++d) fill[d] += m(r, d);
    for (double &v : fill) v /= static_cast<double>(frames);
  }

  FeatureMatrix out = m;
  for (const Band &b : layout.freq_bands)
    for (std::size_t r = 0; r < frames; ++r)
      for (std::size_t d = b.start; d < b.start + b.width; ++d)
        out(r, d) = fill[d];
  for (const Band &b : layout.time_bands)
    for (std::size_t r = b.start; r < b.start + b.width; ++r)
      for (std::size_t d = 0; d < dims; ++d) out(r, d) = fill[d];
  if (layout_out != nullptr) *layout_out = std::move(layout);
  return out;
}

}  // namespace augkit
