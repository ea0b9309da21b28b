// include/augkit/objectives.h

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

#ifndef AUGKIT_OBJECTIVES_H_
#define AUGKIT_OBJECTIVES_H_

#include <cstddef>
#include <string>
#include <vector>

namespace augkit {

struct ScoredHypothesis {
  std::string label;
  double acoustic_loglik = 0.0;  // ln P(O | L)
  double lm_logprob = 0.0;       // ln P(L)
};

/// MMI over an enumerated hypothesis set:
///   k * al_num + lm_num - logsumexp_i (k * al_i + lm_i).
/// The numerator is looked up in the denominator by label (kPrecondition if
/// absent); its score there must match. The result is clamped to <= 0.
double MmiObjective(const ScoredHypothesis &numerator,
                    const std::vector<ScoredHypothesis> &denominator, double k);

struct LogitVector {
  std::vector<double> logits;
  std::size_t target = 0;
};

/// Unnormalized softmax surrogate: z_target + 1 - sum_i exp(z_i).
double RnnlmObjective(const LogitVector &v);

/// Reads "label acoustic_loglik lm_logprob" rows; the first row is the
/// numerator.
std::vector<ScoredHypothesis> ParseScoredHypotheses(const std::string &text);

}  // namespace augkit

#endif  // AUGKIT_OBJECTIVES_H_
