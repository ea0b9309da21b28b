// src/simd/kernels-neon.cc

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

#include "augkit/simd/kernels.h"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace augkit {
namespace simd {

namespace {

float DotF32(const float *a, const float *b, std::size_t n) {
  float32x4_t acc0 = vdupq_n_f32(0.0f);
  float32x4_t acc1 = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = vfmaq_f32(acc0, vld1q_f32(a + i), vld1q_f32(b + i));
    acc1 = vfmaq_f32(acc1, vld1q_f32(a + i + 4), vld1q_f32(b + i + 4));
  }
  for (; i + 4 <= n; i += 4)
    acc0 = vfmaq_f32(acc0, vld1q_f32(a + i), vld1q_f32(b + i));
  float sum = vaddvq_f32(vaddq_f32(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double DotF64(const double *a, const double *b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  for (; i + 2 <= n; i += 2)
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void PowerSpectrum(const double *interleaved, double *out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2x2_t v = vld2q_f64(interleaved + 2 * k);  // deinterleave
    float64x2_t re2 = vmulq_f64(v.val[0], v.val[0]);
    float64x2_t im2 = vmulq_f64(v.val[1], v.val[1]);
    vst1q_f64(out + k, vaddq_f64(re2, im2));
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
  for (; d + 2 <= n; d += 2) {
    float64x2_t v = vsubq_f64(vld1q_f64(x + d), vld1q_f64(mean + d));
    vst1q_f64(x + d, vdivq_f64(v, vld1q_f64(stddev + d)));
  }
  for (; d < n; ++d) x[d] = (x[d] - mean[d]) / stddev[d];
}

const KernelTable kNeonTable = {Isa::kNeon, "neon", &DotF32, &DotF64,
                                &PowerSpectrum, &Standardize};

}  // namespace

const KernelTable *NeonKernels() { return &kNeonTable; }

}  // namespace simd
}  // namespace augkit

#else

namespace augkit {
namespace simd {
const KernelTable *NeonKernels() { return nullptr; }
}  // namespace simd
}  // namespace augkit

#endif
