// tests/oracles/dft.h

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

#ifndef AUGKIT_TESTS_ORACLES_DFT_H_
#define AUGKIT_TESTS_ORACLES_DFT_H_

// Direct O(N^2) transforms in long double, used as references for the
// FFT-based code paths.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// |X[k]|^2 for k = 0..n/2 of x zero-padded to n points.
inline std::vector<double> PowerSpectrum(const std::vector<double> &x,
                                         std::size_t n) {
  const long double pi = 3.141592653589793238462643383279502884L;
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    long double re = 0, im = 0;
    for (std::size_t t = 0; t < x.size() && t < n; ++t) {
      long double ang = -2 * pi * static_cast<long double>(k * t % n) / n;
      re += x[t] * std::cos(ang);
      im += x[t] * std::sin(ang);
    }
    out[k] = static_cast<double>(re * re + im * im);
  }
  return out;
}

/// Power at frequency `bin` (cycles per n samples) via Goertzel.
inline double GoertzelPower(const std::vector<float> &x, std::size_t n,
                            double bin) {
  const double w = 2.0 * M_PI * bin / static_cast<double>(n);
  const double c = 2.0 * std::cos(w);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t t = 0; t < n && t < x.size(); ++t) {
    double s0 = x[t] + c * s1 - s2;
    s2 = s1;
    s1 = s0;
  }
  return s1 * s1 + s2 * s2 - c * s1 * s2;
}

/// Index of the strongest 1 Hz bin of the first `n` samples (n = sample
/// rate gives 1 Hz bins), searched over [lo, hi].
inline int PeakBin(const std::vector<float> &x, std::size_t n, int lo, int hi) {
  int best = lo;
  double best_p = -1.0;
  for (int k = lo; k <= hi; ++k) {
    double p = GoertzelPower(x, n, k);
    if (p > best_p) {
      best_p = p;
      best = k;
    }
  }
  return best;
}

}  // namespace oracle

#endif  // AUGKIT_TESTS_ORACLES_DFT_H_
