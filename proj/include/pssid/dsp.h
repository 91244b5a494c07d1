// include/pssid/dsp.h
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

#ifndef PSSID_DSP_H_
#define PSSID_DSP_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pssid::dsp {

// Forward DFT, X[k] = sum_n x[n] exp(-2 pi i k n / N). Radix-2 for power-of-two
// lengths, direct evaluation with a twiddle table otherwise.
std::vector<std::complex<double>> Dft(std::span<const std::complex<double>> x);
std::vector<std::complex<double>> Dft(std::span<const double> x);

// Symmetric Hanning window, w[n] = 0.5 - 0.5 cos(2 pi n / (M - 1)).
// hanning(1) = {1}.
std::vector<double> Hanning(std::size_t length);

// Lag in [min_lag, max_lag] maximizing the (mean-removed) autocorrelation.
// max_lag is clipped to x.size() - 1.
std::size_t AutocorrPitch(std::span<const double> x, std::size_t min_lag,
                          std::size_t max_lag);

// Centered moving average over `window` samples (rounded up to odd). Near the
// edges the mean is taken over the part of the window inside the signal.
std::vector<double> MovingAverage(std::span<const double> x,
                                  std::size_t window);

// Two-pole resonator
//   y[n] = gain * x[n] + a1 * y[n-1] + a2 * y[n-2].
struct ResonatorCoeffs {
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
  double sample_rate = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double gain = 1.0;

  // Pole radius, sqrt(-a2).
  double radius() const;
  bool stable() const { return radius() < 1.0; }

  // Stable resonator with pole radius exp(-pi bw / fs) and unit gain at DC.
  static ResonatorCoeffs Design(double center_hz, double bandwidth_hz,
                                double sample_rate);
  // Zero-frequency resonator: double pole at z = 1. Only ever used before
  // trend removal.
  static ResonatorCoeffs ZeroFrequency(double sample_rate);
};

std::vector<double> Resonate(std::span<const double> x,
                             const ResonatorCoeffs &coeffs);

}  // namespace pssid::dsp

#endif  // PSSID_DSP_H_
