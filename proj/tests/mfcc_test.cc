// tests/mfcc_test.cc
//
// Copyright 2026  The pssid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pssid/mfcc.h"
#include "test_util.h"

namespace pssid {
namespace {

std::vector<double> Sine(double hz, std::size_t n, double amp = 0.5) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = amp * std::sin(2.0 * std::numbers::pi * hz *
                          static_cast<double>(i) / 16000.0);
  return x;
}

TEST_CASE("framing arithmetic") {
  const MfccOptions opt;
  CHECK(opt.frame_length() == 320);
  CHECK(opt.frame_shift() == 160);
  VoicedRegion r;
  r.samples.resize(800);
  for (std::size_t i = 0; i < 800; ++i) r.samples[i] = static_cast<double>(i);
  const auto frames = FrameSignal(r, opt);
  REQUIRE(frames.size() == 4);
  for (std::size_t f = 0; f < 4; ++f) {
    CHECK(frames[f].size() == 320);
    CHECK(frames[f][0] == 160.0 * f);
  }
  r.samples.resize(319);
  CHECK(FrameSignal(r, opt).empty());
  r.samples.resize(320);
  CHECK(FrameSignal(r, opt).size() == 1);
  r.sample_rate = 8000.0;
  r.samples.resize(480);
  CHECK(FrameSignal(r, opt).size() == 5);
}

TEST_CASE("mel scale") {
  CHECK(HzToMel(0.0) == 0.0);
  CHECK(HzToMel(1000.0) == doctest::Approx(1000.0).epsilon(1e-3));
  for (double f : {50.0, 700.0, 4321.0})
    CHECK(MelToHz(HzToMel(f)) == doctest::Approx(f));
}

TEST_CASE("filterbank shape") {
  const MelFilterbank fb{MfccOptions{}};
  REQUIRE(fb.num_filters() == 26);
  CHECK(fb.num_bins() == 257);
  for (std::size_t b = 0; b < fb.num_bins(); ++b) {
    double sum = 0.0;
    for (std::size_t m = 0; m < 26; ++m) {
      CHECK(fb.weights(m)[b] >= 0.0);
      sum += fb.weights(m)[b];
    }
    CHECK(sum <= 1.0 + 1e-12);
  }
  for (std::size_t m = 1; m < 26; ++m)
    CHECK(fb.center_hz(m) > fb.center_hz(m - 1));
  CHECK(fb.center_hz(25) < 8000.0);
}

TEST_CASE("all-zero frame gives a constant log spectrum") {
  const MfccComputer mfcc;
  const FeatureVector f = mfcc.Compute(std::vector<double>(320, 0.0));
  REQUIRE(f.dim() == 13);
  CHECK(f.kind == FeatureKind::kMfcc);
  CHECK(f.values[0] == doctest::Approx(std::sqrt(26.0) * std::log(1e-10)));
  for (std::size_t k = 1; k < 13; ++k) CHECK(std::abs(f.values[k]) < 1e-9);
}

TEST_CASE("a 1 kHz tone peaks in the filter centred nearest 1 kHz") {
  // Independent filter centres: 28 points equally spaced in mel.
  const double top = 2595.0 * std::log10(1.0 + 8000.0 / 700.0);
  std::size_t expect = 0;
  double best = 1e9;
  for (std::size_t m = 0; m < 26; ++m) {
    const double mel = top * static_cast<double>(m + 1) / 27.0;
    const double hz = 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
    if (std::abs(hz - 1000.0) < best) best = std::abs(hz - 1000.0), expect = m;
  }
  const MfccComputer mfcc;
  const auto e = mfcc.FilterEnergies(Sine(1000.0, 320));
  const auto arg = std::max_element(e.begin(), e.end()) - e.begin();
  CHECK(static_cast<std::size_t>(arg) == expect);
}

TEST_CASE("power spectrum of a tone") {
  const MfccComputer mfcc;
  const auto p = mfcc.PowerSpectrum(Sine(1000.0, 320));
  REQUIRE(p.size() == 257);
  // 1 kHz is bin 32 of a 512-point transform at 16 kHz.
  CHECK(std::max_element(p.begin(), p.end()) - p.begin() == 32);
}

TEST_CASE("amplitude scaling only moves c0") {
  std::mt19937_64 gen(12);
  const auto x = test::RandomFrame(&gen, 320, 0.3);
  std::vector<double> y(x);
  for (double &v : y) v *= 4.0;
  const MfccComputer mfcc;
  const auto a = mfcc.Compute(x), b = mfcc.Compute(y);
  CHECK(b.values[0] - a.values[0] ==
        doctest::Approx(std::sqrt(26.0) * 2.0 * std::log(4.0)));
  for (std::size_t k = 1; k < 13; ++k)
    CHECK(b.values[k] == doctest::Approx(a.values[k]).epsilon(1e-9));
}

TEST_CASE("c1..c13 variant and frame length checks") {
  MfccOptions opt;
  opt.include_c0 = false;
  const MfccComputer no_c0(opt);
  const MfccComputer with_c0;
  std::mt19937_64 gen(13);
  const auto x = test::RandomFrame(&gen, 320);
  const auto a = with_c0.Compute(x), b = no_c0.Compute(x);
  REQUIRE(b.dim() == 13);
  for (std::size_t k = 0; k < 12; ++k)
    CHECK(b.values[k] == doctest::Approx(a.values[k + 1]));
  CHECK_THROWS_AS(with_c0.Compute(std::vector<double>(319, 0.0)), Error);
}

}  // namespace
}  // namespace pssid
