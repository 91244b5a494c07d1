// src/mfcc.cc
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

#include "pssid/mfcc.h"

#include <algorithm>
#include <cmath>

#include "pssid/dsp.h"
#include "pssid/psdct.h"

namespace pssid {

std::size_t MfccOptions::frame_length() const {
  return static_cast<std::size_t>(std::lround(sample_rate * frame_ms / 1000.0));
}

std::size_t MfccOptions::frame_shift() const {
  return static_cast<std::size_t>(std::lround(sample_rate * shift_ms / 1000.0));
}

std::vector<std::vector<double>> FrameSignal(std::span<const double> samples,
                                             std::size_t frame_length,
                                             std::size_t frame_shift) {
  if (frame_length == 0 || frame_shift == 0)
    throw Error("FrameSignal: frame length and shift must be > 0");
  std::vector<std::vector<double>> frames;
  for (std::size_t off = 0; off + frame_length <= samples.size();
       off += frame_shift)
    frames.emplace_back(samples.begin() + off,
                        samples.begin() + off + frame_length);
  return frames;
}

std::vector<std::vector<double>> FrameSignal(const VoicedRegion &region,
                                             const MfccOptions &options) {
  MfccOptions o = options;
  o.sample_rate = region.sample_rate;
  return FrameSignal(region.samples, o.frame_length(), o.frame_shift());
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank::MelFilterbank(const MfccOptions &options)
    : num_bins_(options.fft_size / 2 + 1) {
  if (options.num_filters == 0) throw Error("MelFilterbank: no filters");
  const std::size_t n = options.num_filters;
  const double mel_hi = HzToMel(options.sample_rate / 2.0);
  // n + 2 equally spaced mel points: lower edge, centers, upper edge.
  std::vector<double> edges_hz(n + 2);
  for (std::size_t i = 0; i < n + 2; ++i)
    edges_hz[i] = MelToHz(mel_hi * static_cast<double>(i) /
                          static_cast<double>(n + 1));
  const double bin_hz =
      options.sample_rate / static_cast<double>(options.fft_size);

  weights_.assign(n, std::vector<double>(num_bins_, 0.0));
  centers_hz_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double lo = edges_hz[m], mid = edges_hz[m + 1], hi = edges_hz[m + 2];
    centers_hz_[m] = mid;
    for (std::size_t b = 0; b < num_bins_; ++b) {
      const double f = bin_hz * static_cast<double>(b);
      double w = 0.0;
      if (f > lo && f <= mid)
        w = (f - lo) / (mid - lo);
      else if (f > mid && f < hi)
        w = (hi - f) / (hi - mid);
      weights_[m][b] = w;
    }
  }
}

std::vector<double> MelFilterbank::Apply(
    std::span<const double> power_spectrum) const {
  if (power_spectrum.size() != num_bins_)
    throw Error("MelFilterbank: spectrum size mismatch");
  std::vector<double> out(weights_.size(), 0.0);
  for (std::size_t m = 0; m < weights_.size(); ++m) {
    double acc = 0.0;
    for (std::size_t b = 0; b < num_bins_; ++b)
      acc += weights_[m][b] * power_spectrum[b];
    out[m] = acc;
  }
  return out;
}

MfccComputer::MfccComputer(const MfccOptions &options)
    : options_(options),
      window_(dsp::Hanning(options.frame_length())),
      filterbank_(options) {
  if (options.frame_length() > options.fft_size)
    throw Error("MfccComputer: frame longer than FFT size");
  if (options.num_ceps + (options.include_c0 ? 0 : 1) > options.num_filters)
    throw Error("MfccComputer: more cepstra than filters");
}

std::vector<double> MfccComputer::PowerSpectrum(
    std::span<const double> frame) const {
  if (frame.size() != window_.size())
    throw Error("MFCC: frame has " + std::to_string(frame.size()) +
                " samples, expected " + std::to_string(window_.size()));
  std::vector<double> padded(options_.fft_size, 0.0);
  for (std::size_t i = 0; i < frame.size(); ++i)
    padded[i] = frame[i] * window_[i];
  const auto spec = dsp::Dft(padded);
  std::vector<double> power(filterbank_.num_bins());
  for (std::size_t b = 0; b < power.size(); ++b) power[b] = std::norm(spec[b]);
  return power;
}

std::vector<double> MfccComputer::FilterEnergies(
    std::span<const double> frame) const {
  return filterbank_.Apply(PowerSpectrum(frame));
}

FeatureVector MfccComputer::Compute(std::span<const double> frame) const {
  std::vector<double> log_e = FilterEnergies(frame);
  for (double &v : log_e) v = std::log(std::max(v, options_.log_floor));
  const std::size_t first = options_.include_c0 ? 0 : 1;
  const std::vector<double> c = Dct2Truncated(log_e, first + options_.num_ceps);
  FeatureVector f;
  f.kind = FeatureKind::kMfcc;
  f.values.assign(c.begin() + static_cast<std::ptrdiff_t>(first), c.end());
  return f;
}

}  // namespace pssid
