// include/pssid/gci.h
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

#ifndef PSSID_GCI_H_
#define PSSID_GCI_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pssid/corpus.h"

namespace pssid {

struct EpochList {
  enum class Status { kOk, kTooFewEpochs };

  std::vector<std::size_t> positions;  // region-relative, strictly increasing
  std::string method = "zff";
  Status status = Status::kOk;
  // Pitch period used for trend removal, in samples.
  std::size_t trend_window = 0;

  bool usable() const { return status == Status::kOk; }
};

struct PitchCycle {
  std::vector<double> samples;  // [start_peak, end_peak) of the region
  std::size_t start_peak = 0;
  std::size_t end_peak = 0;
  std::size_t region_id = 0;

  std::size_t length() const { return end_peak - start_peak; }
};

struct GciOptions {
  // Number of moving-average trend-removal passes after the two
  // zero-frequency resonators.
  int trend_passes = 3;
};

// Epochs by zero-frequency filtering. Throws Error if the region is shorter
// than one maximum pitch period; fewer than two epochs is reported through
// EpochList::status. Epochs closer than the minimum pitch period to their
// predecessor are discarded; longer gaps are kept and mark a break in
// periodicity (no cycle is cut across them).
EpochList DetectGci(const VoicedRegion &region, const GciOptions &options = {});

// For each epoch, the highest local maximum of the raw waveform within
// +-T/4, where T is the local epoch spacing. Epochs without a local maximum
// in their window are dropped; duplicate peaks are merged.
std::vector<std::size_t> MapToPeaks(const VoicedRegion &region,
                                    const EpochList &epochs);

// One cycle per consecutive peak pair whose spacing lies within the pitch
// limits and whose energy is non-zero.
std::vector<PitchCycle> SegmentCycles(const VoicedRegion &region,
                                      std::span<const std::size_t> peaks,
                                      std::size_t region_id = 0);

// Writes "region_id,epoch,mapped_peak" rows. Rows are emitted per epoch; the
// peak column is empty when the epoch had no peak in its window.
void WriteGciDumpHeader(std::ostream &out);
void WriteGciDump(std::ostream &out, std::size_t region_id,
                  const VoicedRegion &region, const EpochList &epochs);

}  // namespace pssid

#endif  // PSSID_GCI_H_
