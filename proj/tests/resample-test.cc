// tests/resample-test.cc

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

#include <cmath>
#include <random>

#include "augkit/common.h"
#include "augkit/resample.h"
#include "doctest.h"
#include "oracles/dft.h"
#include "oracles/fixtures.h"

using namespace augkit;

namespace {

// Direct evaluation of the documented interpolator in double precision: a
// Blackman-windowed sinc, 16 zero crossings, cutoff 0.95 * min(1, ratio),
// taps normalized to unit sum.
double ReferenceSample(const std::vector<float> &x, double ratio, double t) {
  const double bw = 0.95 * std::min(1.0, ratio);
  const double half = 16.0 / bw;
  const int taps = static_cast<int>(std::ceil(half));
  const double base = std::floor(t);
  double num = 0.0, den = 0.0;
  for (int k = -taps + 1; k <= taps; ++k) {
    const double i = base + k;
    const double tau = t - i;
    if (std::abs(tau) >= half) continue;
    const double arg = M_PI * bw * tau;
    const double sinc = tau == 0.0 ? 1.0 : std::sin(arg) / arg;
    const double r = tau / half;
    const double h =
        sinc * (0.42 + 0.5 * std::cos(M_PI * r) + 0.08 * std::cos(2 * M_PI * r));
    den += h;
    if (i >= 0 && i < static_cast<double>(x.size()))
      num += h * x[static_cast<std::size_t>(i)];
  }
  return num / den;
}

double Rms(const std::vector<float> &x, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += double(x[i]) * x[i];
  return std::sqrt(s / static_cast<double>(hi - lo));
}

}  // namespace

TEST_SUITE("resample") {

TEST_CASE("SpeedFactor enforces [0.5, 2]") {
  CHECK_NOTHROW(SpeedFactor(0.5));
  CHECK_NOTHROW(SpeedFactor(2.0));
  CHECK_THROWS_AS(SpeedFactor(0.49), Error);
  CHECK_THROWS_AS(SpeedFactor(2.01), Error);
  CHECK_THROWS_AS(Resample(fixtures::Tone(100, 0.1), 3.0), Error);
  try {
    SpeedFactor(0.1);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kRange);
  }
}

TEST_CASE("ratio 1 and alpha 1 are exact bypasses") {
  Waveform w = fixtures::Noise(1234, 5);
  CHECK(Resample(w, 1.0) == w);
  CHECK(SpeedPerturb(w, SpeedFactor(1.0)) == w);
}

TEST_CASE("output lengths follow round(n / alpha)") {
  Waveform one_second = fixtures::Tone(440, 1.0);
  CHECK(std::abs(static_cast<long>(
                     SpeedPerturb(one_second, SpeedFactor(0.9)).samples.size()) -
                 17778) <= 1);
  CHECK(std::abs(static_cast<long>(
                     SpeedPerturb(one_second, SpeedFactor(1.1)).samples.size()) -
                 14545) <= 1);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> alpha(0.5, 2.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = rng() % 3000;
    const double a = alpha(rng);
    Waveform w = fixtures::Noise(n, t);
    const long expect = std::lround(static_cast<double>(n) / a);
    CHECK(std::abs(static_cast<long>(SpeedPerturb(w, SpeedFactor(a)).samples.size()) -
                   expect) <= 1);
  }
}

TEST_CASE("a sinusoid moves to f * alpha") {
  for (double alpha : {0.9, 1.1}) {
    Waveform out = SpeedPerturb(fixtures::Tone(440, 1.2), SpeedFactor(alpha));
    REQUIRE(out.samples.size() >= 16000);
    int peak = oracle::PeakBin(out.samples, 16000, 1, 7999);
    CHECK(std::abs(peak - 440 * alpha) <= 1.0);
  }
  Waveform out = Resample(fixtures::Tone(440, 1.2), 1 / 1.1);
  CHECK(std::abs(oracle::PeakBin(out.samples, 16000, 1, 7999) - 484) <= 1);
}

TEST_CASE("amplitude is kept away from the edges") {
  for (double alpha : {0.9, 1.1, 0.75, 1.6}) {
    Waveform out = SpeedPerturb(fixtures::Tone(1000, 1.0), SpeedFactor(alpha));
    const std::size_t edge = 160;  // 10 ms
    double rms = Rms(out.samples, edge, out.samples.size() - edge);
    CHECK(std::abs(rms / (0.5 / std::sqrt(2.0)) - 1.0) < 0.01);
  }
}

TEST_CASE("DC passes with unit gain") {
  Waveform w;
  w.samples.assign(8000, 0.5f);
  Waveform out = Resample(w, 1 / 0.9);
  const std::size_t edge = 160;
  for (std::size_t i = edge; i + edge < out.samples.size(); ++i)
    REQUIRE(std::abs(out.samples[i] - 0.5) < 1e-3);
}

TEST_CASE("matches the direct windowed-sinc evaluation") {
  Waveform w = fixtures::Noise(2000, 21);
  // 1/0.9 and 1/1.1 are tabulated; 0.7317 is not.
  for (double ratio : {1 / 0.9, 1 / 1.1, 0.7317, 1.93}) {
    Waveform out = Resample(w, ratio);
    double worst = 0.0;
    for (std::size_t j = 0; j < out.samples.size(); j += 7)
      worst = std::max(worst,
                       std::abs(out.samples[j] -
                                ReferenceSample(w.samples, ratio, j / ratio)));
    CHECK(worst < 2e-5);
  }
  CHECK(Resampler(1 / 1.1).polyphase());
  CHECK_FALSE(Resampler(0.7317).polyphase());
}

TEST_CASE("speeding up then slowing down restores the signal") {
  Waveform w = fixtures::Tone(300, 1.0);
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    w.samples[i] += 0.2f * std::sin(2 * M_PI * 1700 * i / 16000.0);
  Waveform back = SpeedPerturb(SpeedPerturb(w, SpeedFactor(1.1)),
                               SpeedFactor(1 / 1.1));
  REQUIRE(std::abs(static_cast<long>(back.samples.size()) -
                   static_cast<long>(w.samples.size())) <= 2);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 400; i + 400 < w.samples.size(); ++i) {
    sxy += double(w.samples[i]) * back.samples[i];
    sxx += double(w.samples[i]) * w.samples[i];
    syy += double(back.samples[i]) * back.samples[i];
  }
  CHECK(sxy / std::sqrt(sxx * syy) >= 0.99);
}

TEST_CASE("usp copies") {
  auto [slow, fast] = MakeUspCopies(fixtures::Tone(200, 1.0));
  CHECK(slow.Duration() == doctest::Approx(1 / 0.9).epsilon(1e-4));
  CHECK(fast.Duration() == doctest::Approx(1 / 1.1).epsilon(1e-4));
  auto [e1, e2] = MakeUspCopies(Waveform{});
  CHECK(e1.samples.empty());
  CHECK(e2.samples.empty());
}

TEST_CASE("clipping is applied and counted") {
  // Full-scale square wave: band-limiting overshoots at every edge.
  Waveform w;
  w.samples.resize(4000);
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    w.samples[i] = (i / 100) % 2 ? 1.0f : -1.0f;
  std::size_t clipped = 0;
  Waveform out = Resample(w, 1.3, &clipped);
  CHECK(clipped > 0);
  std::size_t at_rail = 0;
  for (float s : out.samples) {
    REQUIRE(std::abs(s) <= 1.0f);
    at_rail += std::abs(s) == 1.0f;
  }
  CHECK(at_rail >= clipped);
}

TEST_CASE("resampler cache is shared and thread safe") {
  auto a = GetResampler(1 / 1.1);
  auto b = GetResampler(1 / 1.1);
  CHECK(a.get() == b.get());
}

}  // TEST_SUITE
