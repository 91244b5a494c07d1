// include/pssid/classify.h
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

#ifndef PSSID_CLASSIFY_H_
#define PSSID_CLASSIFY_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pssid/types.h"
#include "pssid/vq.h"

namespace pssid {

struct CmdScore {
  std::string speaker_id;
  FeatureKind kind = FeatureKind::kPsDct;
  double cmd = 0.0;
  std::size_t n_vectors = 0;
};

// Cumulative minimum distance: sum over test vectors of the (unsquared)
// Euclidean distance to the nearest centroid.
CmdScore Cmd(std::span<const FeatureVector> test_vectors,
             const Codebook &codebook);

struct Identification {
  std::vector<CmdScore> ranking;  // ascending cmd, ties by speaker id
  std::string predicted;
};

// Closed-set decision: the codebook with the least CMD. Codebooks must share
// one feature kind.
Identification Identify(std::span<const FeatureVector> test_vectors,
                        std::span<const Codebook> codebooks);

class FusionWeights {
 public:
  // Accuracies in [0, 1] (or any common positive unit, e.g. percent); at
  // least one must be positive.
  FusionWeights(double accuracy_dct, double accuracy_mfcc);

  double accuracy_dct() const { return a_dct_; }
  double accuracy_mfcc() const { return a_mfcc_; }
  // a_dct / (a_dct + a_mfcc)
  double alpha() const { return a_dct_ / (a_dct_ + a_mfcc_); }

 private:
  double a_dct_;
  double a_mfcc_;
};

struct FusedScore {
  std::string speaker_id;
  double cmd_dct = 0.0;
  double cmd_mfcc = 0.0;
  double d_com = 0.0;
};

struct FusedIdentification {
  double alpha = 0.0;
  std::vector<FusedScore> ranking;  // ascending d_com, ties by speaker id
  std::string predicted;
};

struct FusionOptions {
  // Divide each CMD by its vector count before combining.
  bool normalize_by_count = false;
};

// D_com(s) = alpha D_dct(s) + (1 - alpha) D_mfcc(s). Both score lists must
// cover the same speakers (order irrelevant).
FusedIdentification Fuse(std::span<const CmdScore> dct,
                         std::span<const CmdScore> mfcc,
                         const FusionWeights &weights,
                         const FusionOptions &options = {});

// CSV reports. Per-system rows: trial,speaker,kind,cmd,n_vectors,rank.
// Fused rows: trial,speaker,cmd_dct,cmd_mfcc,alpha,d_com,rank.
void WriteScoreHeader(std::ostream &out);
void WriteScores(std::ostream &out, const std::string &trial,
                 const Identification &id);
void WriteFusedHeader(std::ostream &out);
void WriteFused(std::ostream &out, const std::string &trial,
                const FusedIdentification &id);

}  // namespace pssid

#endif  // PSSID_CLASSIFY_H_
