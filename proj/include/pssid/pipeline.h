// include/pssid/pipeline.h
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

#ifndef PSSID_PIPELINE_H_
#define PSSID_PIPELINE_H_

#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pssid/corpus.h"
#include "pssid/gci.h"
#include "pssid/mfcc.h"
#include "pssid/psdct.h"

namespace pssid {

struct FeatureOptions {
  std::set<std::string> voiced_set = DefaultVoicedSet();
  std::size_t psdct_coeffs = kDefaultPsDctCoeffs;
  GciOptions gci;
  MfccOptions mfcc;
};

struct CycleStats {
  std::size_t regions = 0;
  std::size_t regions_without_epochs = 0;
  std::size_t epochs = 0;
  std::size_t cycles = 0;
};

// Voiced regions -> epochs -> peaks -> cycles. region_id counts voiced
// regions within the utterance. When gci_dump is given, epoch/peak rows are
// appended to it.
std::vector<PitchCycle> ExtractCycles(const Utterance &utt,
                                      const FeatureOptions &options,
                                      CycleStats *stats = nullptr,
                                      std::ostream *gci_dump = nullptr);

// PS-DCT vectors for the cycles long enough for num_coeffs.
std::vector<FeatureVector> PsDctFromCycles(std::span<const PitchCycle> cycles,
                                           std::size_t num_coeffs);

std::vector<FeatureVector> ExtractPsDct(const Utterance &utt,
                                        const FeatureOptions &options);
// MFCC vectors over the voiced regions only.
std::vector<FeatureVector> ExtractMfcc(const Utterance &utt,
                                       const FeatureOptions &options);
std::vector<FeatureVector> ExtractFeatures(const Utterance &utt,
                                           FeatureKind kind,
                                           const FeatureOptions &options);

// CSV: speaker,utterance,cycle_index,k1..kD (cycle_index is the frame index
// for MFCC).
void WriteFeatureCsvHeader(std::ostream &out, std::size_t dim);
void WriteFeatureCsv(std::ostream &out, const Utterance &utt,
                     std::span<const FeatureVector> features);

}  // namespace pssid

#endif  // PSSID_PIPELINE_H_
