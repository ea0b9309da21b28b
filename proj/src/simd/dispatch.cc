// src/simd/dispatch.cc

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

#include <atomic>
#include <cstdlib>
#include <string>

#include "augkit/common.h"
#include "augkit/simd/kernels.h"

namespace augkit {
namespace simd {

namespace {

bool CpuHasAvx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable *PickDefault() {
  if (const char *env = std::getenv("AUGKIT_SIMD")) {
    std::string want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == IsaName(isa)) {
        if (const KernelTable *t = TableFor(isa)) return t;
        AUGKIT_WARN << "AUGKIT_SIMD=" << want
                    << " is not available on this machine; ignoring";
      }
    }
  }
  if (const KernelTable *t = TableFor(Isa::kAvx2)) return t;
  if (const KernelTable *t = TableFor(Isa::kNeon)) return t;
  return &ScalarKernels();
}

std::atomic<const KernelTable *> g_active{nullptr};

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

const KernelTable *TableFor(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &ScalarKernels();
    case Isa::kAvx2: {
      static const bool has_avx2 = CpuHasAvx2();
      return has_avx2 ? Avx2Kernels() : nullptr;
    }
    case Isa::kNeon:
      return NeonKernels();
  }
  return nullptr;
}

bool Supported(Isa isa) { return TableFor(isa) != nullptr; }

const KernelTable &Active() {
  const KernelTable *t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    const KernelTable *picked = PickDefault();
    g_active.compare_exchange_strong(t, picked, std::memory_order_acq_rel);
    t = g_active.load(std::memory_order_acquire);
  }
  return *t;
}

void SetActive(Isa isa) {
  const KernelTable *t = TableFor(isa);
  if (t == nullptr)
    AUGKIT_FAIL(kConfig) << "SIMD variant " << IsaName(isa)
                         << " not available";
  g_active.store(t, std::memory_order_release);
}

}  // namespace simd
}  // namespace augkit
