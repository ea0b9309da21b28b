// src/objectives.cc

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

#include "augkit/objectives.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "augkit/common.h"

namespace augkit {

namespace {
void CheckFinite(const ScoredHypothesis &h) {
  if (!std::isfinite(h.acoustic_loglik) || !std::isfinite(h.lm_logprob))
    AUGKIT_FAIL(kRange) << "non-finite score for hypothesis '" << h.label
                        << "'";
}
}  // namespace

double MmiObjective(const ScoredHypothesis &numerator,
                    const std::vector<ScoredHypothesis> &denominator,
                    double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    AUGKIT_FAIL(kPrecondition) << "weighting factor k must be positive";
  if (denominator.empty())
    AUGKIT_FAIL(kPrecondition) << "empty denominator";
  CheckFinite(numerator);
  bool found = false;
  for (const ScoredHypothesis &h : denominator) {
    CheckFinite(h);
    if (h.label != numerator.label) continue;
    if (h.acoustic_loglik != numerator.acoustic_loglik ||
        h.lm_logprob != numerator.lm_logprob)
      AUGKIT_FAIL(kPrecondition)
          << "numerator '" << numerator.label
          << "' scored differently in the denominator";
    found = true;
  }
  if (!found)
    AUGKIT_FAIL(kPrecondition) << "numerator '" << numerator.label
                               << "' is not in the denominator";

  const double num = k * numerator.acoustic_loglik + numerator.lm_logprob;
  double max = -std::numeric_limits<double>::infinity();
  for (const ScoredHypothesis &h : denominator)
    max = std::max(max, k * h.acoustic_loglik + h.lm_logprob);
  if (max - num < 700.0) {
    // Relative to the numerator term (exactly 1), so -log1p keeps full
    // relative precision when the result is close to 0.
    double rest = 0.0;
    bool skipped = false;
    for (const ScoredHypothesis &h : denominator) {
      if (!skipped && h.label == numerator.label) {
        skipped = true;
        continue;
      }
      rest += std::exp(k * h.acoustic_loglik + h.lm_logprob - num);
    }
    return std::min(0.0, -std::log1p(rest));
  }
  double sum = 0.0;
  for (const ScoredHypothesis &h : denominator)
    sum += std::exp(k * h.acoustic_loglik + h.lm_logprob - max);
  return std::min(0.0, (num - max) - std::log(sum));
}

double RnnlmObjective(const LogitVector &v) {
  if (v.target >= v.logits.size())
    AUGKIT_FAIL(kRange) << "target " << v.target << " out of range for "
                        << v.logits.size() << " logits";
  double sum = 0.0;
  for (double z : v.logits) {
    if (!std::isfinite(z)) AUGKIT_FAIL(kRange) << "non-finite logit";
    sum += std::exp(z);
  }
  return v.logits[v.target] + 1.0 - sum;
}

std::vector<ScoredHypothesis> ParseScoredHypotheses(const std::string &text) {
  std::vector<ScoredHypothesis> out;
  std::istringstream in(text);
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    std::vector<std::string> f = SplitFields(line);
    if (f.empty()) continue;
    ScoredHypothesis h;
    if (f.size() != 3 || !ParseDouble(f[1], &h.acoustic_loglik) ||
        !ParseDouble(f[2], &h.lm_logprob))
      AUGKIT_FAIL(kParse) << "line " << line_no
                          << ": expected 'label acoustic_loglik lm_logprob'";
    h.label = f[0];
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace augkit
