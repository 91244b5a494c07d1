// src/dsp.cc
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

#include "pssid/dsp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "pssid/types.h"

namespace pssid::dsp {

namespace {

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void Radix2InPlace(std::vector<std::complex<double>> *data) {
  std::vector<std::complex<double>> &a = *data;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        // Twiddles computed directly rather than by recurrence to keep error
        // at the 1e-15 level for all lengths used here.
        const std::complex<double> w = std::polar(1.0, angle * k);
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace

std::vector<std::complex<double>> Dft(std::span<const std::complex<double>> x) {
  if (x.empty()) throw Error("Dft: empty input");
  const std::size_t n = x.size();
  if (IsPowerOfTwo(n)) {
    std::vector<std::complex<double>> out(x.begin(), x.end());
    Radix2InPlace(&out);
    return out;
  }
  std::vector<std::complex<double>> twiddle(n);
  for (std::size_t i = 0; i < n; ++i)
    twiddle[i] = std::polar(1.0, -2.0 * std::numbers::pi * i / n);
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    std::size_t idx = 0;
    for (std::size_t t = 0; t < n; ++t) {
      acc += x[t] * twiddle[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc;
  }
  return out;
}

std::vector<std::complex<double>> Dft(std::span<const double> x) {
  std::vector<std::complex<double>> cx(x.begin(), x.end());
  return Dft(std::span<const std::complex<double>>(cx));
}

std::vector<double> Hanning(std::size_t length) {
  if (length == 0) throw Error("Hanning: zero length");
  if (length == 1) return {1.0};
  std::vector<double> w(length);
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n)
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / denom);
  return w;
}

std::size_t AutocorrPitch(std::span<const double> x, std::size_t min_lag,
                          std::size_t max_lag) {
  if (x.empty()) throw Error("AutocorrPitch: empty input");
  if (min_lag == 0 || min_lag > max_lag)
    throw Error("AutocorrPitch: invalid lag range");
  if (min_lag >= x.size())
    throw Error("AutocorrPitch: signal shorter than minimum lag");
  max_lag = std::min(max_lag, x.size() - 1);

  const double mean =
      std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> centered(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) centered[i] = x[i] - mean;

  std::size_t best_lag = min_lag;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
    double r = 0.0;
    for (std::size_t i = lag; i < centered.size(); ++i)
      r += centered[i] * centered[i - lag];
    // Unbiased normalization, so long lags are not penalized for having
    // fewer product terms.
    r /= static_cast<double>(centered.size() - lag);
    if (r > best) {
      best = r;
      best_lag = lag;
    }
  }
  return best_lag;
}

std::vector<double> MovingAverage(std::span<const double> x,
                                  std::size_t window) {
  if (x.empty()) throw Error("MovingAverage: empty input");
  if (window == 0) throw Error("MovingAverage: zero window");
  const std::size_t half = window / 2;
  const std::size_t n = x.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

double ResonatorCoeffs::radius() const { return std::sqrt(std::max(0.0, -a2)); }

ResonatorCoeffs ResonatorCoeffs::Design(double center_hz, double bandwidth_hz,
                                        double sample_rate) {
  if (sample_rate <= 0.0) throw Error("resonator: sample rate must be > 0");
  if (bandwidth_hz <= 0.0) throw Error("resonator: bandwidth must be > 0");
  if (center_hz < 0.0 || center_hz >= sample_rate / 2.0)
    throw Error("resonator: center frequency outside (0, fs/2)");
  ResonatorCoeffs c;
  c.center_hz = center_hz;
  c.bandwidth_hz = bandwidth_hz;
  c.sample_rate = sample_rate;
  const double r = std::exp(-std::numbers::pi * bandwidth_hz / sample_rate);
  const double theta = 2.0 * std::numbers::pi * center_hz / sample_rate;
  c.a1 = 2.0 * r * std::cos(theta);
  c.a2 = -r * r;
  c.gain = 1.0 - c.a1 - c.a2;
  return c;
}

ResonatorCoeffs ResonatorCoeffs::ZeroFrequency(double sample_rate) {
  ResonatorCoeffs c;
  c.center_hz = 0.0;
  c.bandwidth_hz = 0.0;
  c.sample_rate = sample_rate;
  c.a1 = 2.0;
  c.a2 = -1.0;
  c.gain = 1.0;
  return c;
}

std::vector<double> Resonate(std::span<const double> x,
                             const ResonatorCoeffs &coeffs) {
  std::vector<double> y(x.size());
  double y1 = 0.0, y2 = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double v = coeffs.gain * x[n] + coeffs.a1 * y1 + coeffs.a2 * y2;
    y[n] = v;
    y2 = y1;
    y1 = v;
  }
  return y;
}

}  // namespace pssid::dsp
