// tests/dsp_test.cc
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
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pssid/dsp.h"
#include "test_util.h"

namespace pssid {
namespace {

std::vector<std::complex<double>> NaiveDft(const std::vector<double> &x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t t = 0; t < n; ++t)
      out[k] += x[t] * std::polar(1.0, -2.0 * std::numbers::pi *
                                           static_cast<double>(k * t) /
                                           static_cast<double>(n));
  return out;
}

TEST_CASE("dft of a unit impulse is flat") {
  const auto y = dsp::Dft(std::vector<double>{1, 0, 0, 0});
  REQUIRE(y.size() == 4);
  for (const auto &v : y) {
    CHECK(v.real() == doctest::Approx(1.0));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
}

TEST_CASE("dft agrees with the defining sum for power-of-two and other sizes") {
  std::mt19937_64 gen(3);
  for (std::size_t n : {1u, 2u, 8u, 64u, 512u, 3u, 45u, 160u, 267u}) {
    const auto x = test::RandomFrame(&gen, n);
    const auto fast = dsp::Dft(x);
    const auto ref = NaiveDft(x);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      err = std::max(err, std::abs(fast[k] - ref[k]));
    CHECK_MESSAGE(err < 1e-9, "n = " << n);
  }
}

TEST_CASE("complex dft is linear in its input") {
  std::mt19937_64 gen(5);
  const auto a = test::RandomFrame(&gen, 32), b = test::RandomFrame(&gen, 32);
  std::vector<std::complex<double>> z(32);
  for (std::size_t i = 0; i < 32; ++i) z[i] = {a[i], b[i]};
  const auto fz = dsp::Dft(z), fa = dsp::Dft(a), fb = dsp::Dft(b);
  for (std::size_t k = 0; k < 32; ++k)
    CHECK(std::abs(fz[k] - (fa[k] + std::complex<double>(0, 1) * fb[k])) <
          1e-12);
}

TEST_CASE("hanning window") {
  const auto w = dsp::Hanning(320);
  REQUIRE(w.size() == 320);
  CHECK(w.front() == doctest::Approx(0.0));
  CHECK(w.back() == doctest::Approx(0.0));
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(w[i] == doctest::Approx(w[w.size() - 1 - i]));
    CHECK(w[i] <= 1.0);
  }
  const auto odd = dsp::Hanning(5);
  CHECK(odd[2] == doctest::Approx(1.0));
  CHECK(dsp::Hanning(1) == std::vector<double>{1.0});
  CHECK_THROWS_AS(dsp::Hanning(0), Error);
}

TEST_CASE("autocorrelation pitch of a 100 Hz impulse train") {
  const VoicedRegion r = test::ImpulseTrain(16000.0, 0.5, 160.0, 37.0);
  const std::size_t p = dsp::AutocorrPitch(r.samples, 40, 267);
  CHECK(p >= 159);
  CHECK(p <= 161);
}

TEST_CASE("autocorrelation pitch of a 200 Hz sawtooth") {
  std::vector<double> x(8000);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = static_cast<double>(i % 80) / 80.0;
  const std::size_t p = dsp::AutocorrPitch(x, 40, 267);
  CHECK(p >= 79);
  CHECK(p <= 81);
}

TEST_CASE("moving average") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const auto y = dsp::MovingAverage(x, 3);
  REQUIRE(y.size() == 5);
  CHECK(y[0] == doctest::Approx(1.5));  // truncated at the edge
  CHECK(y[1] == doctest::Approx(2.0));
  CHECK(y[2] == doctest::Approx(3.0));
  CHECK(y[4] == doctest::Approx(4.5));
  const auto same = dsp::MovingAverage(x, 1);
  CHECK(same == x);
}

TEST_CASE("designed resonator is stable with unit dc gain") {
  const auto c = dsp::ResonatorCoeffs::Design(500.0, 80.0, 16000.0);
  CHECK(c.stable());
  CHECK(c.radius() == doctest::Approx(std::exp(-std::numbers::pi * 80.0 /
                                               16000.0)));
  const auto y = dsp::Resonate(std::vector<double>(20000, 1.0), c);
  CHECK(y.back() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("resonator output stays bounded for bounded input") {
  std::mt19937_64 gen(11);
  for (double f : {300.0, 1200.0, 3000.0}) {
    const auto c = dsp::ResonatorCoeffs::Design(f, 60.0, 16000.0);
    // Sum of |h[n]| bounds the output for |x| <= 1.
    std::vector<double> impulse(40000, 0.0);
    impulse[0] = 1.0;
    double l1 = 0.0;
    for (double v : dsp::Resonate(impulse, c)) l1 += std::abs(v);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = test::RandomFrame(&gen, 20000);
      double peak = 0.0;
      for (double v : dsp::Resonate(x, c)) peak = std::max(peak, std::abs(v));
      CHECK(std::isfinite(peak));
      CHECK(peak <= l1 + 1e-9);
    }
  }
}

TEST_CASE("zero-frequency resonator is the double integrator") {
  const auto zf = dsp::ResonatorCoeffs::ZeroFrequency(16000.0);
  CHECK(zf.a1 == 2.0);
  CHECK(zf.a2 == -1.0);
  CHECK_FALSE(zf.stable());
  std::vector<double> impulse(6, 0.0);
  impulse[0] = 1.0;
  const auto y = dsp::Resonate(impulse, zf);
  for (std::size_t n = 0; n < y.size(); ++n)
    CHECK(y[n] == doctest::Approx(zf.gain * static_cast<double>(n + 1)));
}

}  // namespace
}  // namespace pssid
