// include/augkit/features.h

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

#ifndef AUGKIT_FEATURES_H_
#define AUGKIT_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "augkit/audio.h"

namespace augkit {

enum class FeatureKind { kLogMel, kMfcc, kCmvnMfcc };

/// Row-major frames x dims matrix of doubles.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<double> Row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

  double frame_shift = 0.010;   // seconds
  double frame_length = 0.025;  // seconds
  FeatureKind kind = FeatureKind::kLogMel;

  bool operator==(const FeatureMatrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct FrontendConfig {
  int sample_rate = 16000;
  double frame_length_ms = 25.0;
  double frame_shift_ms = 10.0;
  int num_mel_bins = 40;
  int num_ceps = 40;
  double low_freq = 20.0;
  /// Upper band edge in Hz; values <= 0 are offsets from Nyquist.
  double high_freq = -400.0;
  double preemphasis = 0.97;
  double log_floor = 1e-10;

  int FrameSamples() const;
  int ShiftSamples() const;
  int FftSize() const;  // next power of two >= FrameSamples()
  double Nyquist() const { return 0.5 * sample_rate; }
  double HighFreq() const;
  /// Throws kConfig on invalid settings.
  void Validate() const;
};

struct VtlnConfig {
  double warp = 1.0;  // alpha, in [0.8, 1.25]
  double vtln_low = 100.0;
  /// Values <= 0 are offsets from the frontend's high_freq.
  double vtln_high = -500.0;

  double High(const FrontendConfig &fe) const;
  void Validate(const FrontendConfig &fe) const;
};

/// Piecewise-linear VTLN warp: f -> f / alpha in the middle band, with
/// linear segments anchoring low_freq and high_freq as fixed points.
double VtlnWarpFreq(double freq, const VtlnConfig &vtln,
                    const FrontendConfig &fe);

double MelScale(double freq);
double InverseMelScale(double mel);

/// Triangular mel filters over FFT power bins, with optionally warped edges.
class MelBanks {
 public:
  MelBanks(const FrontendConfig &fe, const VtlnConfig *vtln);

  int num_bins() const { return static_cast<int>(bins_.size()); }
  /// Weight of FFT bin k in filter m (0 outside its support).
  double Weight(int m, int k) const;
  /// Filter center frequencies in Hz (after warping).
  const std::vector<double> &centers() const { return centers_; }

  void Compute(std::span<const double> power, std::span<double> out) const;

 private:
  struct Bin {
    int first;  // first FFT bin with nonzero weight
    std::vector<double> weights;
  };
  std::vector<Bin> bins_;
  std::vector<double> centers_;
};

/// Orthonormal DCT-II matrix, num_ceps x num_bins.
std::vector<double> DctMatrix(int num_ceps, int num_bins);

/// 1 + floor((n - frame) / shift) for n >= frame, else 0.
std::size_t NumFrames(std::size_t num_samples, const FrontendConfig &fe);

FeatureMatrix LogMel(const Waveform &wave, const FrontendConfig &fe,
                     const VtlnConfig *vtln = nullptr);
FeatureMatrix Mfcc(const Waveform &wave, const FrontendConfig &fe,
                   const VtlnConfig *vtln = nullptr);
/// MFCC of a precomputed log-mel matrix (square orthonormal DCT, no lifter).
FeatureMatrix MfccFromLogMel(const FeatureMatrix &log_mel, int num_ceps);

using FeatureEntry = std::pair<std::string, FeatureMatrix>;
using FeatureList = std::vector<FeatureEntry>;

enum class CmvnMode { kSpeaker, kUtterance };
CmvnMode ParseCmvnMode(std::string_view name);

/// Per group and dimension: subtract the pooled mean, divide by the pooled
/// standard deviation (by 1 when variance < 1e-12).
FeatureList Cmvn(const FeatureList &features,
                 const std::map<std::string, std::string> &utt2spk,
                 CmvnMode mode);

/// Kaldi text archive: "<id>  [\n  r11 r12 ...\n  ... ]\n", six significant
/// digits per value.
std::string WriteFeatureArchive(const FeatureList &entries);
FeatureList ReadFeatureArchive(std::string_view text);

/// "<key> <value>" table, e.g. per-speaker VTLN warp factors.
std::map<std::string, double> ReadScalarTable(const std::string &path);

/// "key=value" lines; '#' starts a comment. Unknown keys throw kConfig.
void ApplyFrontendConfigFile(const std::string &path, FrontendConfig *fe,
                             VtlnConfig *vtln);

}  // namespace augkit

#endif  // AUGKIT_FEATURES_H_
