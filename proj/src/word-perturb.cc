// src/word-perturb.cc

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

#include "augkit/word-perturb.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "augkit/common.h"
#include "augkit/resample.h"

namespace augkit {

namespace {

struct Piece {
  std::int64_t in_start = 0;
  std::int64_t in_end = 0;
  double alpha = 1.0;
  std::int64_t out_start = 0;
  std::int64_t out_len = 0;
  std::shared_ptr<const Resampler> resampler;  // null for verbatim pieces
};

float PieceValue(const Piece &piece, std::span<const float> input,
                 std::int64_t j) {
  if (!piece.resampler) {
    std::int64_t idx = piece.in_start + j;
    return (idx >= 0 && idx < static_cast<std::int64_t>(input.size()))
               ? input[static_cast<std::size_t>(idx)]
               : 0.0f;
  }
  return piece.resampler->Sample(input, piece.in_start, j);
}

}  // namespace

std::size_t PerturbPlan::NumFast() const {
  return static_cast<std::size_t>(
      std::count_if(assignments.begin(), assignments.end(),
                    [](const WordFactor &f) { return f.alpha == kWordFast; }));
}

void CheckWordOrder(const std::vector<WordAlignment> &words) {
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i].start < words[i - 1].start)
      AUGKIT_FAIL(kPrecondition) << "words are not sorted by start (word " << i
                                 << " '" << words[i].word << "')";
    if (words[i].start < words[i - 1].end() - kOverlapTolerance)
      AUGKIT_FAIL(kPrecondition) << "words " << i - 1 << " and " << i
                                 << " overlap";
  }
}

PerturbPlan MakePlan(const std::vector<WordAlignment> &words,
                     double fraction_fast, std::uint64_t seed) {
  if (!(fraction_fast >= 0.0 && fraction_fast <= 1.0))
    AUGKIT_FAIL(kRange) << "fraction_fast " << fraction_fast
                        << " outside [0,1]";
  CheckWordOrder(words);
  const std::size_t n = words.size();
  const auto num_fast = static_cast<std::size_t>(
      RoundToInt64(fraction_fast * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates: order[0, num_fast) is a uniform random subset.
  for (std::size_t i = 0; i < num_fast; ++i) {
    auto j = static_cast<std::size_t>(rng.UniformInt(
        static_cast<std::int64_t>(i), static_cast<std::int64_t>(n) - 1));
    std::swap(order[i], order[j]);
  }

  PerturbPlan plan;
  plan.seed = seed;
  plan.fraction_fast = fraction_fast;
  plan.assignments.resize(n);
  for (std::size_t i = 0; i < n; ++i) plan.assignments[i] = {i, kWordSlow};
  for (std::size_t i = 0; i < num_fast; ++i)
    plan.assignments[order[i]].alpha = kWordFast;
  return plan;
}

PerturbedUtterance ApplyPlan(const Waveform &wave,
                             const std::vector<WordAlignment> &words,
                             const PerturbPlan &plan,
                             const WordPerturbOptions &opts) {
  CheckWordOrder(words);
  if (plan.assignments.size() != words.size())
    AUGKIT_FAIL(kPrecondition) << "plan covers " << plan.assignments.size()
                               << " words but the utterance has "
                               << words.size();
  std::vector<double> alpha(words.size(), 0.0);
  for (const WordFactor &f : plan.assignments) {
    if (f.word_index >= words.size() || alpha[f.word_index] != 0.0)
      AUGKIT_FAIL(kPrecondition)
          << "plan must list every word index exactly once";
    alpha[f.word_index] = SpeedFactor(f.alpha).alpha();
  }

  const std::span<const float> x(wave.samples);
  const auto n = static_cast<std::int64_t>(x.size());
  const double rate = wave.sample_rate;

  std::vector<Piece> pieces;
  std::vector<std::size_t> word_piece(words.size());
  std::int64_t cursor = 0, out_pos = 0;
  auto add_gap = [&](std::int64_t end) {
    if (end <= cursor) return;
    pieces.push_back({cursor, end, 1.0, out_pos, end - cursor, nullptr});
    out_pos += end - cursor;
    cursor = end;
  };
  for (std::size_t i = 0; i < words.size(); ++i) {
    const WordAlignment &w = words[i];
    std::int64_t s = std::max(RoundToInt64(w.start * rate), cursor);
    std::int64_t e = RoundToInt64(w.end() * rate);
    if (e > n)
      AUGKIT_FAIL(kBounds) << "word '" << w.word << "' ends at " << w.end()
                           << " s, past the waveform end (" << wave.Duration()
                           << " s)";
    if (e <= s)
      AUGKIT_FAIL(kDegenerateSegment)
          << "degenerate segment: word '" << w.word << "' at " << w.start
          << " s has no samples after rounding";
    add_gap(s);
    Piece p{s, e, alpha[i], out_pos, e - s, nullptr};
    if (alpha[i] != 1.0) {
      double ratio = 1.0 / alpha[i];
      p.out_len = RoundToInt64(static_cast<double>(e - s) * ratio);
      if (p.out_len <= 0)
        AUGKIT_FAIL(kDegenerateSegment)
            << "degenerate segment: word '" << w.word << "' vanishes";
      p.resampler = GetResampler(ratio);
    }
    word_piece[i] = pieces.size();
    pieces.push_back(p);
    out_pos += p.out_len;
    cursor = e;
  }
  add_gap(n);

  PerturbedUtterance result;
  result.wave.sample_rate = wave.sample_rate;
  result.wave.samples.resize(static_cast<std::size_t>(out_pos));
  std::span<float> out(result.wave.samples);
  for (const Piece &p : pieces) {
    auto dst = out.subspan(static_cast<std::size_t>(p.out_start),
                           static_cast<std::size_t>(p.out_len));
    if (p.resampler) {
      p.resampler->Interpolate(x, p.in_start, 0, dst);
    } else {
      std::copy(x.begin() + p.in_start, x.begin() + p.in_end, dst.begin());
    }
  }

  if (opts.crossfade_ms > 0.0) {
    const auto half = RoundToInt64(opts.crossfade_ms * rate / 1000.0) / 2;
    // Blend values are computed from the input, never from `out`, so the
    // order of junctions does not matter.
    for (std::size_t k = 1; k < pieces.size(); ++k) {
      const Piece &a = pieces[k - 1];
      const Piece &b = pieces[k];
      if (!a.resampler && !b.resampler) continue;
      const std::int64_t h =
          std::min({half, a.out_len / 2, b.out_len / 2});
      if (h <= 0) continue;
      const std::int64_t junction = b.out_start;
      for (std::int64_t d = -h; d < h; ++d) {
        const std::int64_t pos = junction + d;
        const double wgt = (static_cast<double>(d + h) + 0.5) /
                           static_cast<double>(2 * h);
        const double va = PieceValue(a, x, pos - a.out_start);
        const double vb = PieceValue(b, x, pos - b.out_start);
        out[static_cast<std::size_t>(pos)] =
            static_cast<float>((1.0 - wgt) * va + wgt * vb);
      }
    }
  }

  result.clipped = ClipInPlace(&result.wave.samples);
  result.words.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Piece &p = pieces[word_piece[i]];
    WordAlignment w = words[i];
    w.start = static_cast<double>(p.out_start) / rate;
    w.duration = static_cast<double>(p.out_len) / rate;
    result.words.push_back(std::move(w));
  }
  return result;
}

std::uint64_t WspPlanSeed(std::uint64_t seed, double fraction) {
  return DeriveSeed(seed,
                    "wsp" + std::to_string(RoundToInt64(fraction * 100.0)));
}

std::pair<PerturbedUtterance, PerturbedUtterance> MakeWspCopies(
    const Waveform &wave, const std::vector<WordAlignment> &words,
    std::uint64_t seed, const WordPerturbOptions &opts) {
  auto make = [&](double fraction) {
    PerturbPlan plan = MakePlan(words, fraction, WspPlanSeed(seed, fraction));
    return ApplyPlan(wave, words, plan, opts);
  };
  return {make(kWspFractionA), make(kWspFractionB)};
}

}  // namespace augkit
