// include/pssid/psdct.h
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

#ifndef PSSID_PSDCT_H_
#define PSSID_PSDCT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "pssid/gci.h"
#include "pssid/types.h"

namespace pssid {

inline constexpr std::size_t kDefaultPsDctCoeffs = 15;

// Orthonormal DCT-II:
//   c[k] = s(k) sum_n x[n] cos(pi (2n + 1) k / 2M),
//   s(0) = sqrt(1/M), s(k) = sqrt(2/M).
std::vector<double> Dct2(std::span<const double> frame);

// First `count` coefficients of Dct2(frame); count <= frame.size().
std::vector<double> Dct2Truncated(std::span<const double> frame,
                                  std::size_t count);

// x / ||x||. A zero-energy frame is a caller bug (std::logic_error).
std::vector<double> NormalizeEnergy(std::span<const double> frame);

// Coefficients 1..num_coeffs of the DCT-II of the unit-energy cycle. No
// window and no pre-emphasis. Throws Error if the cycle has num_coeffs or
// fewer samples.
FeatureVector PsDctFeature(std::span<const double> cycle,
                           std::size_t num_coeffs = kDefaultPsDctCoeffs);
FeatureVector PsDctFeature(const PitchCycle &cycle,
                           std::size_t num_coeffs = kDefaultPsDctCoeffs);

struct MecResult {
  // sum_{k=1..K} c[k]^2 / sum_{k=0..M-1} c[k]^2, averaged over cycles.
  double with_dc = 0.0;
  // sum_{k=1..K} c[k]^2 / sum_{k=1..M-1} c[k]^2, averaged over cycles with
  // non-zero AC energy.
  double without_dc = 0.0;
};

// Mean energy captured by coefficients 1..K. Cycles with num_coeffs or fewer
// samples contribute their full AC energy. Throws Error on an empty list.
MecResult Mec(std::span<const PitchCycle> cycles, std::size_t num_coeffs);

// MEC for several K at once (one transform per cycle).
std::vector<MecResult> MecSweep(std::span<const PitchCycle> cycles,
                                std::span<const std::size_t> num_coeffs);

}  // namespace pssid

#endif  // PSSID_PSDCT_H_
