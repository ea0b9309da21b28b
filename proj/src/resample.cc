// src/resample.cc

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

#include "augkit/resample.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "augkit/common.h"
#include "augkit/simd/kernels.h"

namespace augkit {

namespace {

constexpr double kCutoffFraction = 0.95;

void CheckRatio(double ratio) {
  if (!(ratio >= SpeedFactor::kMin && ratio <= SpeedFactor::kMax))
    AUGKIT_FAIL(kRange) << "resample ratio " << ratio << " outside ["
                        << SpeedFactor::kMin << ", " << SpeedFactor::kMax
                        << "]";
}

std::int64_t FloorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SpeedFactor::SpeedFactor(double alpha) : alpha_(alpha) {
  if (!(alpha >= kMin && alpha <= kMax))
    AUGKIT_FAIL(kRange) << "speed factor " << alpha << " outside [" << kMin
                        << ", " << kMax << "]";
}

Resampler::Resampler(double ratio, int num_zeros) : ratio_(ratio) {
  CheckRatio(ratio);
  if (num_zeros < 1) AUGKIT_FAIL(kConfig) << "num_zeros must be positive";
  step_ = 1.0 / ratio;
  bandwidth_ = kCutoffFraction * std::min(1.0, ratio);
  half_width_ = num_zeros / bandwidth_;
  half_taps_ = static_cast<int>(std::ceil(half_width_));

  for (std::int64_t l = 1; l <= kMaxPhases; ++l) {
    double m = std::round(step_ * static_cast<double>(l));
    if (std::abs(m / static_cast<double>(l) - step_) <= 1e-12 * step_) {
      num_phases_ = l;
      phase_step_ = static_cast<std::int64_t>(m);
      break;
    }
  }
  if (num_phases_ > 0) {
    table_.resize(static_cast<std::size_t>(num_phases_ * taps()));
    for (std::int64_t p = 0; p < num_phases_; ++p)
      ComputeWeights(static_cast<double>(p) / static_cast<double>(num_phases_),
                     table_.data() + p * taps());
  }
}

double Resampler::Kernel(double tau) const {
  double a = std::abs(tau);
  if (a >= half_width_) return 0.0;
  constexpr double pi = std::numbers::pi;
  double x = bandwidth_ * tau;
  double sinc = x == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x);
  double r = tau / half_width_;
  double window = 0.42 + 0.5 * std::cos(pi * r) + 0.08 * std::cos(2.0 * pi * r);
  return bandwidth_ * sinc * window;
}

void Resampler::ComputeWeights(double frac, float *weights) const {
  const int n = taps();
  double buf[512];
  std::vector<double> heap;
  double *w = buf;
  if (n > 512) {
    heap.resize(static_cast<std::size_t>(n));
    w = heap.data();
  }
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    w[k] = Kernel(frac + half_taps_ - 1 - k);
    sum += w[k];
  }
  for (int k = 0; k < n; ++k) weights[k] = static_cast<float>(w[k] / sum);
}

float Resampler::Sample(std::span<const float> input, std::int64_t origin,
                        std::int64_t j) const {
  float v = 0.0f;
  Interpolate(input, origin, j, std::span<float>(&v, 1));
  return v;
}

void Resampler::Interpolate(std::span<const float> input, std::int64_t origin,
                            std::int64_t first, std::span<float> out) const {
  const auto dot = simd::Active().dot_f32;
  const int n_taps = taps();
  const auto size = static_cast<std::int64_t>(input.size());
  std::vector<float> weights(static_cast<std::size_t>(n_taps));
  std::vector<float> window(static_cast<std::size_t>(n_taps));

  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::int64_t j = first + static_cast<std::int64_t>(k);
    std::int64_t base;
    const float *w;
    if (num_phases_ > 0) {
      std::int64_t num = j * phase_step_;
      std::int64_t q = FloorDiv(num, num_phases_);
      std::int64_t p = num - q * num_phases_;
      base = origin + q;
      w = table_.data() + p * n_taps;
    } else {
      double pos = static_cast<double>(j) * step_;
      double fl = std::floor(pos);
      base = origin + static_cast<std::int64_t>(fl);
      ComputeWeights(pos - fl, weights.data());
      w = weights.data();
    }
    const std::int64_t lo = base - half_taps_ + 1;
    const std::int64_t hi = lo + n_taps;  // exclusive
    if (lo >= 0 && hi <= size) {
      out[k] = dot(w, input.data() + lo, static_cast<std::size_t>(n_taps));
    } else if (hi <= 0 || lo >= size) {
      out[k] = 0.0f;
    } else {
      for (int t = 0; t < n_taps; ++t) {
        std::int64_t i = lo + t;
        window[t] = (i >= 0 && i < size) ? input[static_cast<std::size_t>(i)]
                                         : 0.0f;
      }
      out[k] = dot(w, window.data(), static_cast<std::size_t>(n_taps));
    }
  }
}

std::shared_ptr<const Resampler> GetResampler(double ratio) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const Resampler>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(ratio);
  if (it != cache.end()) return it->second;
  auto r = std::make_shared<const Resampler>(ratio);
  // Random ratios from callers would otherwise grow the cache without bound.
  if (cache.size() < 64) cache.emplace(ratio, r);
  return r;
}

Waveform Resample(const Waveform &wave, double ratio,
                  std::size_t *num_clipped) {
  CheckRatio(ratio);
  if (ratio == 1.0) return wave;
  Waveform out;
  out.sample_rate = wave.sample_rate;
  const auto n = static_cast<double>(wave.samples.size());
  out.samples.resize(static_cast<std::size_t>(RoundToInt64(n * ratio)));
  if (!out.samples.empty())
    GetResampler(ratio)->Interpolate(wave.samples, 0, 0, out.samples);
  std::size_t clipped = ClipInPlace(&out.samples);
  if (num_clipped != nullptr) *num_clipped += clipped;
  return out;
}

Waveform SpeedPerturb(const Waveform &wave, SpeedFactor factor,
                      std::size_t *num_clipped) {
  if (factor.alpha() == 1.0) return wave;
  return Resample(wave, 1.0 / factor.alpha(), num_clipped);
}

std::pair<Waveform, Waveform> MakeUspCopies(const Waveform &wave,
                                            std::size_t *num_clipped) {
  return {SpeedPerturb(wave, SpeedFactor(kUspSlow), num_clipped),
          SpeedPerturb(wave, SpeedFactor(kUspFast), num_clipped)};
}

}  // namespace augkit
