// src/pipeline.cc
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

#include "pssid/pipeline.h"

#include <ostream>

namespace pssid {

std::string_view FeatureKindName(FeatureKind kind) {
  return kind == FeatureKind::kPsDct ? "psdct" : "mfcc";
}

FeatureKind ParseFeatureKind(std::string_view name) {
  if (name == "psdct") return FeatureKind::kPsDct;
  if (name == "mfcc") return FeatureKind::kMfcc;
  throw Error("unknown feature kind \"" + std::string(name) + "\"");
}

std::vector<PitchCycle> ExtractCycles(const Utterance &utt,
                                      const FeatureOptions &options,
                                      CycleStats *stats,
                                      std::ostream *gci_dump) {
  CycleStats local;
  CycleStats &st = stats ? *stats : local;
  std::vector<PitchCycle> cycles;
  const std::vector<VoicedRegion> regions =
      ExtractVoicedRegions(utt, options.voiced_set);
  for (std::size_t r = 0; r < regions.size(); ++r) {
    ++st.regions;
    const EpochList epochs = DetectGci(regions[r], options.gci);
    if (gci_dump) WriteGciDump(*gci_dump, r, regions[r], epochs);
    st.epochs += epochs.positions.size();
    if (!epochs.usable()) {
      ++st.regions_without_epochs;
      continue;
    }
    const std::vector<std::size_t> peaks = MapToPeaks(regions[r], epochs);
    std::vector<PitchCycle> rc = SegmentCycles(regions[r], peaks, r);
    st.cycles += rc.size();
    for (PitchCycle &c : rc) cycles.push_back(std::move(c));
  }
  return cycles;
}

std::vector<FeatureVector> PsDctFromCycles(std::span<const PitchCycle> cycles,
                                           std::size_t num_coeffs) {
  std::vector<FeatureVector> out;
  out.reserve(cycles.size());
  for (const PitchCycle &c : cycles) {
    if (c.samples.size() <= num_coeffs) continue;
    out.push_back(PsDctFeature(c, num_coeffs));
  }
  return out;
}

std::vector<FeatureVector> ExtractPsDct(const Utterance &utt,
                                        const FeatureOptions &options) {
  const std::vector<PitchCycle> cycles = ExtractCycles(utt, options);
  return PsDctFromCycles(cycles, options.psdct_coeffs);
}

std::vector<FeatureVector> ExtractMfcc(const Utterance &utt,
                                       const FeatureOptions &options) {
  MfccOptions mo = options.mfcc;
  mo.sample_rate = utt.sample_rate;
  const MfccComputer mfcc(mo);
  std::vector<FeatureVector> out;
  for (const VoicedRegion &region :
       ExtractVoicedRegions(utt, options.voiced_set)) {
    for (const auto &frame : FrameSignal(region, mo))
      out.push_back(mfcc.Compute(frame));
  }
  return out;
}

std::vector<FeatureVector> ExtractFeatures(const Utterance &utt,
                                           FeatureKind kind,
                                           const FeatureOptions &options) {
  return kind == FeatureKind::kPsDct ? ExtractPsDct(utt, options)
                                     : ExtractMfcc(utt, options);
}

void WriteFeatureCsvHeader(std::ostream &out, std::size_t dim) {
  out << "speaker,utterance,cycle_index";
  for (std::size_t k = 1; k <= dim; ++k) out << ",k" << k;
  out << '\n';
}

void WriteFeatureCsv(std::ostream &out, const Utterance &utt,
                     std::span<const FeatureVector> features) {
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < features.size(); ++i) {
    out << utt.speaker_id << ',' << utt.utterance_id << ',' << i;
    for (double v : features[i].values) out << ',' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace pssid
