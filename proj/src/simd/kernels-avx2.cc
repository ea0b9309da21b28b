// src/simd/kernels-avx2.cc

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

// Compiled with -mavx2 -mfma -ffp-contract=off. Keep this translation unit
// free of standard-library templates: anything instantiated here could be
// merged by the linker into code that runs on CPUs without AVX2.

#include "augkit/simd/kernels.h"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace augkit {
namespace simd {

namespace {

inline float HorizontalSum(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  __m128 shuf = _mm_movehdup_ps(lo);
  __m128 sums = _mm_add_ps(lo, shuf);
  shuf = _mm_movehl_ps(shuf, sums);
  sums = _mm_add_ss(sums, shuf);
  return _mm_cvtss_f32(sums);
}

inline double HorizontalSum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d high64 = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, high64));
}

float DotF32(const float *a, const float *b, std::size_t n) {
  __m256 acc0 = _mm256_setzero_ps();
  __m256 acc1 = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
    acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 8),
                           _mm256_loadu_ps(b + i + 8), acc1);
  }
  for (; i + 8 <= n; i += 8)
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
  float sum = HorizontalSum(_mm256_add_ps(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double DotF64(const double *a, const double *b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void PowerSpectrum(const double *interleaved, double *out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d v0 = _mm256_loadu_pd(interleaved + 2 * k);      // r0 i0 r1 i1
    __m256d v1 = _mm256_loadu_pd(interleaved + 2 * k + 4);  // r2 i2 r3 i3
    __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    // h = p0 p2 p1 p3
    _mm256_storeu_pd(out + k, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; k < n; ++k) {
    double re = interleaved[2 * k], im = interleaved[2 * k + 1];
    double re2 = re * re, im2 = im * im;
    out[k] = re2 + im2;
  }
}

void Standardize(double *x, const double *mean, const double *stddev,
                 std::size_t n) {
  std::size_t d = 0;
  for (; d + 4 <= n; d += 4) {
    __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x + d), _mm256_loadu_pd(mean + d));
    _mm256_storeu_pd(x + d, _mm256_div_pd(v, _mm256_loadu_pd(stddev + d)));
  }
  for (; d < n; ++d) x[d] = (x[d] - mean[d]) / stddev[d];
}

const KernelTable kAvx2Table = {Isa::kAvx2, "avx2", &DotF32, &DotF64,
                                &PowerSpectrum, &Standardize};

}  // namespace

const KernelTable *Avx2Kernels() { return &kAvx2Table; }

}  // namespace simd
}  // namespace augkit

#else

namespace augkit {
namespace simd {
const KernelTable *Avx2Kernels() { return nullptr; }
}  // namespace simd
}  // namespace augkit

#endif
