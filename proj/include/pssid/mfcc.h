// include/pssid/mfcc.h
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

#ifndef PSSID_MFCC_H_
#define PSSID_MFCC_H_

#include <cstddef>
#include <span>
#include <vector>

#include "pssid/corpus.h"
#include "pssid/types.h"

namespace pssid {

struct MfccOptions {
  double sample_rate = 16000.0;
  double frame_ms = 20.0;
  double shift_ms = 10.0;
  std::size_t fft_size = 512;
  std::size_t num_filters = 26;
  std::size_t num_ceps = 13;
  double log_floor = 1e-10;
  // c0..c12 when true, c1..c13 otherwise.
  bool include_c0 = true;

  std::size_t frame_length() const;
  std::size_t frame_shift() const;
};

// Full frames only; a region shorter than one frame yields no frames.
std::vector<std::vector<double>> FrameSignal(std::span<const double> samples,
                                             std::size_t frame_length,
                                             std::size_t frame_shift);
std::vector<std::vector<double>> FrameSignal(const VoicedRegion &region,
                                             const MfccOptions &options = {});

// Triangular filters on the HTK mel scale, 2595 log10(1 + f / 700), spanning
// 0 Hz to fs/2. weights[m][bin] for bins 0..fft_size/2.
class MelFilterbank {
 public:
  explicit MelFilterbank(const MfccOptions &options);

  std::size_t num_filters() const { return weights_.size(); }
  std::size_t num_bins() const { return num_bins_; }
  const std::vector<double> &weights(std::size_t m) const { return weights_[m]; }
  double center_hz(std::size_t m) const { return centers_hz_[m]; }

  std::vector<double> Apply(std::span<const double> power_spectrum) const;

 private:
  std::size_t num_bins_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> centers_hz_;
};

double HzToMel(double hz);
double MelToHz(double mel);

class MfccComputer {
 public:
  explicit MfccComputer(const MfccOptions &options = {});

  const MfccOptions &options() const { return options_; }
  const MelFilterbank &filterbank() const { return filterbank_; }

  // Power spectrum (fft_size/2 + 1 bins) of the Hanning-windowed frame.
  std::vector<double> PowerSpectrum(std::span<const double> frame) const;
  // Mel filter energies before the log.
  std::vector<double> FilterEnergies(std::span<const double> frame) const;
  // Throws Error if the frame length is not frame_length().
  FeatureVector Compute(std::span<const double> frame) const;

 private:
  MfccOptions options_;
  std::vector<double> window_;
  MelFilterbank filterbank_;
};

}  // namespace pssid

#endif  // PSSID_MFCC_H_
