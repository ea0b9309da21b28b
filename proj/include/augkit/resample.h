// include/augkit/resample.h

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

#ifndef AUGKIT_RESAMPLE_H_
#define AUGKIT_RESAMPLE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "augkit/audio.h"

namespace augkit {

/// Speaking-rate multiplier. Output duration = input duration / alpha.
class SpeedFactor {
 public:
  static constexpr double kMin = 0.5;
  static constexpr double kMax = 2.0;

  /// Throws kRange outside [kMin, kMax].
  explicit SpeedFactor(double alpha);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

/// Band-limited interpolator on a uniform grid: output sample j is the
/// windowed-sinc reconstruction of the input at position origin + j / ratio
/// (in input samples). Inputs outside [0, size) are treated as zero.
///
/// The kernel is a Blackman-windowed sinc with `num_zeros` zero crossings per
/// side and cutoff 0.95 * min(1, ratio) of the input Nyquist rate. Each phase
/// of the kernel is normalized to unit DC gain. When 1/ratio is a fraction
/// M/L with L <= kMaxPhases the L phases are tabulated (polyphase);
/// otherwise taps are evaluated per output sample.
class Resampler {
 public:
  static constexpr int kDefaultZeros = 16;
  static constexpr std::int64_t kMaxPhases = 1000;

  explicit Resampler(double ratio, int num_zeros = kDefaultZeros);

  double ratio() const { return ratio_; }
  bool polyphase() const { return num_phases_ > 0; }
  int taps() const { return 2 * half_taps_; }

  /// Fills out[k] with output sample (first + k). `first` may be negative.
  void Interpolate(std::span<const float> input, std::int64_t origin,
                   std::int64_t first, std::span<float> out) const;

  float Sample(std::span<const float> input, std::int64_t origin,
               std::int64_t j) const;

 private:
  // Taps for fractional offset `frac` in [0, 1) into `weights` (size taps()).
  void ComputeWeights(double frac, float *weights) const;
  double Kernel(double tau) const;

  double ratio_;
  double step_;        // input samples per output sample
  double bandwidth_;   // 2 * cutoff, cycles per input sample
  double half_width_;  // kernel support radius in input samples
  int half_taps_;
  std::int64_t num_phases_ = 0;  // L, 0 when not tabulated
  std::int64_t phase_step_ = 0;  // M
  std::vector<float> table_;     // num_phases_ x taps()
};

/// Shared, immutable resampler for `ratio` (cached by value).
std::shared_ptr<const Resampler> GetResampler(double ratio);

/// Resamples to round(n * ratio) samples; ratio = output/input length in
/// [0.5, 2]. ratio == 1 returns the input unchanged. The sample-rate label is
/// kept. Samples are clipped to [-1, 1]; the count is added to *num_clipped.
Waveform Resample(const Waveform &wave, double ratio,
                  std::size_t *num_clipped = nullptr);

/// sox "speed" semantics: Resample(wave, 1 / alpha), rate label unchanged, so
/// tempo and pitch move together.
Waveform SpeedPerturb(const Waveform &wave, SpeedFactor factor,
                      std::size_t *num_clipped = nullptr);

inline constexpr double kUspSlow = 0.9;
inline constexpr double kUspFast = 1.1;

/// The two utterance-level copies: (alpha 0.9, alpha 1.1).
std::pair<Waveform, Waveform> MakeUspCopies(const Waveform &wave,
                                            std::size_t *num_clipped = nullptr);

}  // namespace augkit

#endif  // AUGKIT_RESAMPLE_H_
