// src/simd/kernels-scalar.cc

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

namespace augkit {
namespace simd {

namespace {

float DotF32(const float *a, const float *b, std::size_t n) {
  float sum = 0.0f;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double DotF64(const double *a, const double *b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void PowerSpectrum(const double *interleaved, double *out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    double re = interleaved[2 * k], im = interleaved[2 * k + 1];
    double re2 = re * re, im2 = im * im;
    out[k] = re2 + im2;
  }
}

void Standardize(double *x, const double *mean, const double *stddev,
                 std::size_t n) {
  for (std::size_t d = 0; d < n; ++d) x[d] = (x[d] - mean[d]) / stddev[d];
}

const KernelTable kScalarTable = {Isa::kScalar, "scalar", &DotF32, &DotF64,
                                  &PowerSpectrum, &Standardize};

}  // namespace

const KernelTable &ScalarKernels() { return kScalarTable; }

}  // namespace simd
}  // namespace augkit
