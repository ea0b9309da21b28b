// src/features.cc

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

#include "augkit/features.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "augkit/common.h"
#include "augkit/simd/kernels.h"

namespace augkit {

namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is. Plans are
// created once per size and kept for the life of the process.
class RealFft {
 public:
  explicit RealFft(int n) : n_(n), plan_(GetPlan(n)) {}

  int size() const { return n_; }

  // `in` has n_ reals; `out` receives n_/2 + 1 interleaved complex values.
  void Forward(std::vector<double> *in, std::vector<double> *out) const {
    fftw_execute_dft_r2c(plan_, in->data(),
                         reinterpret_cast<fftw_complex *>(out->data()));
  }

 private:
  static fftw_plan GetPlan(int n) {
    static std::mutex mu;
    static std::unordered_map<int, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    std::vector<double> in(static_cast<std::size_t>(n));
    std::vector<double> out(static_cast<std::size_t>(n + 2));
    fftw_plan plan = fftw_plan_dft_r2c_1d(
        n, in.data(), reinterpret_cast<fftw_complex *>(out.data()),
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) AUGKIT_FAIL(kConfig) << "FFTW cannot plan size " << n;
    plans.emplace(n, plan);
    return plan;
  }

  int n_;
  fftw_plan plan_;
};

constexpr double kVarianceFloor = 1e-12;

std::string NormalizeKey(std::string key) {
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

}  // namespace

int FrontendConfig::FrameSamples() const {
  return static_cast<int>(RoundToInt64(sample_rate * frame_length_ms / 1000.0));
}

int FrontendConfig::ShiftSamples() const {
  return static_cast<int>(RoundToInt64(sample_rate * frame_shift_ms / 1000.0));
}

int FrontendConfig::FftSize() const {
  int n = 1;
  while (n < FrameSamples()) n <<= 1;
  return n;
}

double FrontendConfig::HighFreq() const {
  return high_freq > 0.0 ? high_freq : Nyquist() + high_freq;
}

void FrontendConfig::Validate() const {
  if (sample_rate <= 0) AUGKIT_FAIL(kConfig) << "sample_rate must be positive";
  if (FrameSamples() < 2 || ShiftSamples() < 1)
    AUGKIT_FAIL(kConfig) << "frame length/shift too small";
  if (num_mel_bins < 1 || num_ceps < 1 || num_ceps > num_mel_bins)
    AUGKIT_FAIL(kConfig) << "need 1 <= num_ceps <= num_mel_bins";
  if (!(low_freq > 0.0 && low_freq < HighFreq() && HighFreq() <= Nyquist()))
    AUGKIT_FAIL(kConfig) << "need 0 < low_freq < high_freq <= Nyquist (low "
                         << low_freq << ", high " << HighFreq() << ")";
  if (!(preemphasis >= 0.0 && preemphasis <= 1.0))
    AUGKIT_FAIL(kConfig) << "preemphasis must be in [0,1]";
  if (!(log_floor > 0.0)) AUGKIT_FAIL(kConfig) << "log_floor must be positive";
}

double VtlnConfig::High(const FrontendConfig &fe) const {
  return vtln_high > 0.0 ? vtln_high : fe.HighFreq() + vtln_high;
}

void VtlnConfig::Validate(const FrontendConfig &fe) const {
  if (!(warp >= 0.8 && warp <= 1.25))
    AUGKIT_FAIL(kRange) << "VTLN warp " << warp << " outside [0.8, 1.25]";
  const double high = High(fe);
  if (!(fe.low_freq < vtln_low && vtln_low < high && high < fe.HighFreq()))
    AUGKIT_FAIL(kConfig) << "need low_freq < vtln_low < vtln_high < high_freq";
  if (!(vtln_low * std::max(1.0, warp) < high * std::min(1.0, warp)))
    AUGKIT_FAIL(kConfig) << "VTLN breakpoints cross for warp " << warp;
}

double VtlnWarpFreq(double freq, const VtlnConfig &vtln,
                    const FrontendConfig &fe) {
  const double low_freq = fe.low_freq, high_freq = fe.HighFreq();
  if (!(freq >= low_freq && freq <= high_freq))
    AUGKIT_FAIL(kRange) << "frequency " << freq << " Hz outside [" << low_freq
                        << ", " << high_freq << "]";
  const double alpha = vtln.warp;
  if (alpha == 1.0) return freq;
  const double l = vtln.vtln_low * std::max(1.0, alpha);
  const double h = vtln.High(fe) * std::min(1.0, alpha);
  const double scale = 1.0 / alpha;
  const double fl = scale * l, fh = scale * h;
  if (freq < l) {
    double slope = (fl - low_freq) / (l - low_freq);
    return low_freq + slope * (freq - low_freq);
  }
  if (freq < h) return scale * freq;
  double slope = (high_freq - fh) / (high_freq - h);
  return high_freq + slope * (freq - high_freq);
}

double MelScale(double freq) { return 1127.0 * std::log(1.0 + freq / 700.0); }

double InverseMelScale(double mel) {
  return 700.0 * (std::exp(mel / 1127.0) - 1.0);
}

MelBanks::MelBanks(const FrontendConfig &fe, const VtlnConfig *vtln) {
  fe.Validate();
  if (vtln != nullptr) vtln->Validate(fe);
  const int num_bins = fe.num_mel_bins;
  const int fft_size = fe.FftSize();
  const int num_fft_bins = fft_size / 2 + 1;
  const double bin_hz = static_cast<double>(fe.sample_rate) / fft_size;
  const double low = fe.low_freq, high = fe.HighFreq();
  const double mel_low = MelScale(low), mel_high = MelScale(high);
  const double mel_delta = (mel_high - mel_low) / (num_bins + 1);

  // Edge i in Hz; the outer edges are pinned so warping sees exact anchors.
  std::vector<double> edge_mel(static_cast<std::size_t>(num_bins + 2));
  for (int i = 0; i < num_bins + 2; ++i) {
    double hz = i == 0 ? low
                : i == num_bins + 1
                    ? high
                    : std::clamp(InverseMelScale(mel_low + i * mel_delta), low,
                                 high);
    if (vtln != nullptr) hz = VtlnWarpFreq(hz, *vtln, fe);
    edge_mel[static_cast<std::size_t>(i)] = MelScale(hz);
  }

  bins_.resize(static_cast<std::size_t>(num_bins));
  centers_.resize(static_cast<std::size_t>(num_bins));
  for (int m = 0; m < num_bins; ++m) {
    const double left = edge_mel[m], center = edge_mel[m + 1],
                 right = edge_mel[m + 2];
    centers_[m] = InverseMelScale(center);
    int first = -1, last = -1;
    std::vector<double> w(static_cast<std::size_t>(num_fft_bins), 0.0);
    for (int k = 0; k < num_fft_bins; ++k) {
      const double mel = MelScale(bin_hz * k);
      if (mel > left && mel < right) {
        w[k] = mel <= center ? (mel - left) / (center - left)
                             : (right - mel) / (right - center);
        if (first < 0) first = k;
        last = k;
      }
    }
    Bin &bin = bins_[m];
    if (first < 0) {
      // Narrower than one FFT bin; keep an empty filter rather than guess.
      bin.first = 0;
    } else {
      bin.first = first;
      bin.weights.assign(w.begin() + first, w.begin() + last + 1);
    }
  }
}

double MelBanks::Weight(int m, int k) const {
  const Bin &bin = bins_[static_cast<std::size_t>(m)];
  int offset = k - bin.first;
  if (offset < 0 || offset >= static_cast<int>(bin.weights.size())) return 0.0;
  return bin.weights[static_cast<std::size_t>(offset)];
}

void MelBanks::Compute(std::span<const double> power,
                       std::span<double> out) const {
  const auto dot = simd::Active().dot_f64;
  for (std::size_t m = 0; m < bins_.size(); ++m) {
    const Bin &bin = bins_[m];
    out[m] = bin.weights.empty()
                 ? 0.0
                 : dot(bin.weights.data(), power.data() + bin.first,
                       bin.weights.size());
  }
}

std::vector<double> DctMatrix(int num_ceps, int num_bins) {
  std::vector<double> t(static_cast<std::size_t>(num_ceps * num_bins));
  const double n = num_bins;
  for (int k = 0; k < num_ceps; ++k) {
    const double norm = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int i = 0; i < num_bins; ++i)
      t[static_cast<std::size_t>(k * num_bins + i)] =
          norm * std::cos(std::numbers::pi * k * (i + 0.5) / n);
  }
  return t;
}

std::size_t NumFrames(std::size_t num_samples, const FrontendConfig &fe) {
  const auto frame = static_cast<std::size_t>(fe.FrameSamples());
  const auto shift = static_cast<std::size_t>(fe.ShiftSamples());
  if (num_samples < frame) return 0;
  return 1 + (num_samples - frame) / shift;
}

FeatureMatrix LogMel(const Waveform &wave, const FrontendConfig &fe,
                     const VtlnConfig *vtln) {
  fe.Validate();
  if (wave.sample_rate != fe.sample_rate)
    AUGKIT_FAIL(kConfig) << "waveform rate " << wave.sample_rate
                         << " Hz differs from frontend rate " << fe.sample_rate
                         << " Hz";
  const int frame = fe.FrameSamples();
  const int shift = fe.ShiftSamples();
  if (wave.samples.size() < static_cast<std::size_t>(frame))
    AUGKIT_FAIL(kPrecondition) << "insufficient samples: " << wave.samples.size()
                               << " < one frame of " << frame;

  const std::size_t num_frames = NumFrames(wave.samples.size(), fe);
  const MelBanks banks(fe, vtln);
  const RealFft fft(fe.FftSize());
  const auto &kernels = simd::Active();

  std::vector<double> window(static_cast<std::size_t>(frame));
  for (int i = 0; i < frame; ++i)
    window[i] =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (frame - 1));

  FeatureMatrix out(num_frames, static_cast<std::size_t>(fe.num_mel_bins));
  out.frame_length = fe.frame_length_ms / 1000.0;
  out.frame_shift = fe.frame_shift_ms / 1000.0;
  out.kind = FeatureKind::kLogMel;

  std::vector<double> buf(static_cast<std::size_t>(fft.size()));
  std::vector<double> spectrum(static_cast<std::size_t>(fft.size() + 2));
  std::vector<double> power(static_cast<std::size_t>(fft.size() / 2 + 1));
  for (std::size_t f = 0; f < num_frames; ++f) {
    const float *src = wave.samples.data() + f * static_cast<std::size_t>(shift);
    double mean = 0.0;
    for (int i = 0; i < frame; ++i) mean += src[i];
    mean /= frame;
    for (int i = 0; i < frame; ++i) buf[i] = src[i] - mean;
    for (int i = frame - 1; i > 0; --i) buf[i] -= fe.preemphasis * buf[i - 1];
    buf[0] -= fe.preemphasis * buf[0];
    for (int i = 0; i < frame; ++i) buf[i] *= window[i];
    std::fill(buf.begin() + frame, buf.end(), 0.0);

    fft.Forward(&buf, &spectrum);
    kernels.power_spectrum(spectrum.data(), power.data(), power.size());
    std::span<double> row = out.Row(f);
    banks.Compute(power, row);
    for (double &e : row) e = std::log(std::max(e, fe.log_floor));
  }
  return out;
}

FeatureMatrix MfccFromLogMel(const FeatureMatrix &log_mel, int num_ceps) {
  const int num_bins = static_cast<int>(log_mel.cols());
  if (num_ceps < 1 || num_ceps > num_bins)
    AUGKIT_FAIL(kConfig) << "need 1 <= num_ceps <= " << num_bins;
  const std::vector<double> dct = DctMatrix(num_ceps, num_bins);
  const auto dot = simd::Active().dot_f64;
  FeatureMatrix out(log_mel.rows(), static_cast<std::size_t>(num_ceps));
  out.frame_length = log_mel.frame_length;
  out.frame_shift = log_mel.frame_shift;
  out.kind = FeatureKind::kMfcc;
  for (std::size_t f = 0; f < log_mel.rows(); ++f) {
    std::span<const double> in = log_mel.Row(f);
    for (int k = 0; k < num_ceps; ++k)
      out(f, static_cast<std::size_t>(k)) =
          dot(dct.data() + static_cast<std::size_t>(k * num_bins), in.data(),
              static_cast<std::size_t>(num_bins));
  }
  return out;
}

FeatureMatrix Mfcc(const Waveform &wave, const FrontendConfig &fe,
                   const VtlnConfig *vtln) {
  return MfccFromLogMel(LogMel(wave, fe, vtln), fe.num_ceps);
}

CmvnMode ParseCmvnMode(std::string_view name) {
  if (name == "speaker") return CmvnMode::kSpeaker;
  if (name == "utterance") return CmvnMode::kUtterance;
  AUGKIT_FAIL(kConfig) << "unknown CMVN mode '" << name
                       << "' (expected speaker or utterance)";
}

FeatureList Cmvn(const FeatureList &features,
                 const std::map<std::string, std::string> &utt2spk,
                 CmvnMode mode) {
  if (features.empty()) return {};
  const std::size_t dims = features.front().second.cols();
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto &[utt, mat] = features[i];
    if (mat.cols() != dims && mat.rows() > 0)
      AUGKIT_FAIL(kPrecondition) << "utterance " << utt << " has " << mat.cols()
                                 << " dims, expected " << dims;
    std::string key = utt;
    if (mode == CmvnMode::kSpeaker) {
      auto it = utt2spk.find(utt);
      if (it == utt2spk.end())
        AUGKIT_FAIL(kPrecondition) << "no speaker mapping for utterance " << utt;
      key = it->second;
    }
    groups[key].push_back(i);
  }

  FeatureList out = features;
  const auto standardize = simd::Active().standardize;
  std::vector<double> mean(dims), stddev(dims);
  for (const auto &[key, members] : groups) {
    std::fill(mean.begin(), mean.end(), 0.0);
    std::fill(stddev.begin(), stddev.end(), 0.0);
    std::size_t count = 0;
    for (std::size_t i : members) {
      const FeatureMatrix &m = features[i].second;
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t d = 0; d < dims; ++d) mean[d] += m(r, d);
      count += m.rows();
    }
    if (count == 0) continue;
    for (double &v : mean) v /= static_cast<double>(count);
    for (std::size_t i : members) {
      const FeatureMatrix &m = features[i].second;
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t d = 0; d < dims; ++d) {
          double c = m(r, d) - mean[d];
          stddev[d] += c * c;
        }
    }
    for (double &v : stddev) {
      v /= static_cast<double>(count);
      v = v < kVarianceFloor ? 1.0 : std::sqrt(v);
    }
    for (std::size_t i : members) {
      FeatureMatrix &m = out[i].second;
      for (std::size_t r = 0; r < m.rows(); ++r)
        standardize(m.Row(r).data(), mean.data(), stddev.data(), dims);
      m.kind = FeatureKind::kCmvnMfcc;
    }
  }
  return out;
}

std::string WriteFeatureArchive(const FeatureList &entries) {
  std::string out;
  char buf[64];
  for (const auto &[utt, m] : entries) {
    out += utt;
    out += "  [";
    if (m.rows() == 0 || m.cols() == 0) {
      out += " ]\n";
      continue;
    }
    out += '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
      out += ' ';
      for (std::size_t c = 0; c < m.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), " %.6g", m(r, c));
        out += buf;
      }
      out += r + 1 == m.rows() ? " ]\n" : "\n";
    }
  }
  return out;
}

FeatureList ReadFeatureArchive(std::string_view text) {
  FeatureList entries;
  bool in_matrix = false;
  std::string utt;
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0, start_line = 0;

  auto finish = [&]() {
    FeatureMatrix m(rows, cols);
    std::copy(values.begin(), values.end(), m.data().begin());
    entries.emplace_back(utt, std::move(m));
    in_matrix = false;
  };
  // Consumes value tokens (and a possible closing bracket) of one line.
  auto consume = [&](const std::vector<std::string> &tokens, std::size_t from) {
    std::size_t row_len = 0;
    for (std::size_t i = from; i < tokens.size(); ++i) {
      if (tokens[i] == "]") {
        if (i + 1 != tokens.size())
          AUGKIT_FAIL(kParse) << "feature archive line " << line_no
                              << ": text after ']'";
        if (row_len > 0) {
          if (rows > 0 && row_len != cols)
            AUGKIT_FAIL(kParse) << "feature archive line " << line_no
                                << ": row has " << row_len
                                << " values, expected " << cols;
          cols = row_len;
          ++rows;
        }
        finish();
        return;
      }
      double v;
      if (!ParseDouble(tokens[i], &v))
        AUGKIT_FAIL(kParse) << "feature archive line " << line_no
                            << ": bad value '" << tokens[i] << "'";
      values.push_back(v);
      ++row_len;
    }
    if (row_len > 0) {
      if (rows > 0 && row_len != cols)
        AUGKIT_FAIL(kParse) << "feature archive line " << line_no
                            << ": row has " << row_len << " values, expected "
                            << cols;
      cols = row_len;
      ++rows;
    }
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::vector<std::string> tokens = SplitFields(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (tokens.empty()) continue;
    if (!in_matrix) {
      if (tokens.size() < 2 || tokens[1] != "[")
        AUGKIT_FAIL(kParse) << "feature archive line " << line_no
                            << ": expected '<utt-id> ['";
      utt = tokens[0];
      values.clear();
      rows = cols = 0;
      in_matrix = true;
      start_line = line_no;
      consume(tokens, 2);
    } else {
      consume(tokens, 0);
    }
  }
  if (in_matrix)
    AUGKIT_FAIL(kParse) << "feature archive line " << start_line
                        << ": matrix for '" << utt << "' is missing ']'";
  return entries;
}

std::map<std::string, double> ReadScalarTable(const std::string &path) {
  std::istringstream in(ReadFileToString(path));
  std::map<std::string, double> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> f = SplitFields(line);
    if (f.empty()) continue;
    double v;
    if (f.size() != 2 || !ParseDouble(f[1], &v))
      AUGKIT_FAIL(kParse) << path << ":" << line_no
                          << ": expected '<key> <number>'";
    if (!table.emplace(f[0], v).second)
      AUGKIT_FAIL(kDuplicateId) << "duplicate id '" << f[0] << "' in " << path
                                << " at line " << line_no;
  }
  return table;
}

void ApplyFrontendConfigFile(const std::string &path, FrontendConfig *fe,
                             VtlnConfig *vtln) {
  std::istringstream in(ReadFileToString(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::vector<std::string> f = SplitFields(line);
    if (f.empty()) continue;
    auto eq = f[0].find('=');
    if (f.size() != 1 || eq == std::string::npos)
      AUGKIT_FAIL(kParse) << path << ":" << line_no << ": expected key=value";
    std::string key = NormalizeKey(f[0].substr(0, eq));
    std::string value = f[0].substr(eq + 1);
    double v;
    if (!ParseDouble(value, &v))
      AUGKIT_FAIL(kParse) << path << ":" << line_no << ": bad number '" << value
                          << "'";
    if (key == "sample_rate" || key == "sample_frequency") {
      fe->sample_rate = static_cast<int>(v);
    } else if (key == "frame_length_ms" || key == "frame_length") {
      fe->frame_length_ms = v;
    } else if (key == "frame_shift_ms" || key == "frame_shift") {
      fe->frame_shift_ms = v;
    } else if (key == "num_mel_bins") {
      fe->num_mel_bins = static_cast<int>(v);
    } else if (key == "num_ceps") {
      fe->num_ceps = static_cast<int>(v);
    } else if (key == "low_freq") {
      fe->low_freq = v;
    } else if (key == "high_freq") {
      fe->high_freq = v;
    } else if (key == "preemphasis" || key == "preemphasis_coefficient") {
      fe->preemphasis = v;
    } else if (key == "log_floor") {
      fe->log_floor = v;
    } else if (key == "vtln_low") {
      vtln->vtln_low = v;
    } else if (key == "vtln_high") {
      vtln->vtln_high = v;
    } else {
      AUGKIT_FAIL(kConfig) << path << ":" << line_no << ": unknown key '"
                           << key << "'";
    }
  }
}

}  // namespace augkit
