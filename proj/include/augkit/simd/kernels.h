// include/augkit/simd/kernels.h

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

#ifndef AUGKIT_SIMD_KERNELS_H_
#define AUGKIT_SIMD_KERNELS_H_

#include <cstddef>
#include <string_view>

// Inner-loop kernels shared by the resampler and the feature front-end.
//
// Every kernel has a portable scalar reference implementation; AVX2 (x86-64)
// and NEON (aarch64) variants are compiled in separate translation units and
// picked once at runtime. The elementwise kernels (power spectrum,
// standardize) are bit-identical across variants. Dot products may differ in
// the last bits because the summation order differs.

namespace augkit {
namespace simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  const char *name;
  float (*dot_f32)(const float *a, const float *b, std::size_t n);
  double (*dot_f64)(const double *a, const double *b, std::size_t n);
  // out[k] = re[k]^2 + im[k]^2 for n interleaved (re, im) pairs.
  void (*power_spectrum)(const double *interleaved, double *out,
                         std::size_t n);
  // x[d] = (x[d] - mean[d]) / stddev[d]
  void (*standardize)(double *x, const double *mean, const double *stddev,
                      std::size_t n);
};

/// Kernels currently in use. Selected on first call: the AUGKIT_SIMD
/// environment variable ("scalar", "avx2", "neon") wins if that ISA is
/// available, otherwise the widest supported ISA.
const KernelTable &Active();

/// Table for a specific ISA, or nullptr when it was not compiled in or the
/// CPU lacks it.
const KernelTable *TableFor(Isa isa);

bool Supported(Isa isa);

/// Overrides the active table; throws if unsupported. Intended for tests and
/// benchmarking.
void SetActive(Isa isa);

std::string_view IsaName(Isa isa);

// Per-ISA entry points (defined in their own translation units).
const KernelTable &ScalarKernels();
const KernelTable *Avx2Kernels();
const KernelTable *NeonKernels();

}  // namespace simd
}  // namespace augkit

#endif  // AUGKIT_SIMD_KERNELS_H_
