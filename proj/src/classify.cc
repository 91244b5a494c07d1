// src/classify.cc
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

#include "pssid/classify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

namespace pssid {

CmdScore Cmd(std::span<const FeatureVector> test_vectors,
             const Codebook &codebook) {
  if (test_vectors.empty()) throw Error("Cmd: empty test set");
  if (codebook.centroids.empty()) throw Error("Cmd: empty codebook");
  CmdScore s;
  s.speaker_id = codebook.speaker_id;
  s.kind = codebook.kind;
  s.n_vectors = test_vectors.size();
  for (const FeatureVector &v : test_vectors) {
    if (v.kind != codebook.kind)
      throw Error("Cmd: feature kind differs from codebook of " +
                  codebook.speaker_id);
    if (v.dim() != codebook.dim)
      throw Error("Cmd: dimension " + std::to_string(v.dim()) +
                  " differs from codebook dimension " +
                  std::to_string(codebook.dim));
    double best = std::numeric_limits<double>::infinity();
    for (const auto &c : codebook.centroids) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double diff = v.values[i] - c[i];
        d2 += diff * diff;
      }
      best = std::min(best, d2);
    }
    s.cmd += std::sqrt(best);
  }
  return s;
}

Identification Identify(std::span<const FeatureVector> test_vectors,
                        std::span<const Codebook> codebooks) {
  if (codebooks.empty()) throw Error("Identify: no enrolled speakers");
  for (const Codebook &cb : codebooks) {
    if (cb.kind != codebooks[0].kind)
      throw Error("Identify: codebooks of different feature kinds");
  }
  Identification id;
  id.ranking.reserve(codebooks.size());
  for (const Codebook &cb : codebooks)
    id.ranking.push_back(Cmd(test_vectors, cb));
  std::sort(id.ranking.begin(), id.ranking.end(),
            [](const CmdScore &a, const CmdScore &b) {
              if (a.cmd != b.cmd) return a.cmd < b.cmd;
              return a.speaker_id < b.speaker_id;
            });
  id.predicted = id.ranking.front().speaker_id;
  return id;
}

FusionWeights::FusionWeights(double accuracy_dct, double accuracy_mfcc)
    : a_dct_(accuracy_dct), a_mfcc_(accuracy_mfcc) {
  if (!(a_dct_ >= 0.0) || !(a_mfcc_ >= 0.0))
    throw Error("FusionWeights: accuracies must be non-negative");
  if (!(a_dct_ + a_mfcc_ > 0.0))
    throw Error("FusionWeights: accuracies sum to zero");
}

FusedIdentification Fuse(std::span<const CmdScore> dct,
                         std::span<const CmdScore> mfcc,
                         const FusionWeights &weights,
                         const FusionOptions &options) {
  if (dct.empty()) throw Error("Fuse: empty score list");
  auto value = [&](const CmdScore &s) {
    if (!options.normalize_by_count) return s.cmd;
    return s.n_vectors ? s.cmd / static_cast<double>(s.n_vectors) : s.cmd;
  };
  std::map<std::string, double> mfcc_by_speaker;
  for (const CmdScore &s : mfcc) {
    if (!mfcc_by_speaker.emplace(s.speaker_id, value(s)).second)
      throw Error("Fuse: duplicate speaker " + s.speaker_id);
  }
  if (mfcc_by_speaker.size() != dct.size())
    throw Error("Fuse: speaker sets differ between systems");

  FusedIdentification out;
  out.alpha = weights.alpha();
  for (const CmdScore &s : dct) {
    const auto it = mfcc_by_speaker.find(s.speaker_id);
    if (it == mfcc_by_speaker.end())
      throw Error("Fuse: speaker " + s.speaker_id + " missing from MFCC scores");
    FusedScore f;
    f.speaker_id = s.speaker_id;
    f.cmd_dct = value(s);
    f.cmd_mfcc = it->second;
    f.d_com = out.alpha * f.cmd_dct + (1.0 - out.alpha) * f.cmd_mfcc;
    out.ranking.push_back(std::move(f));
  }
  std::sort(out.ranking.begin(), out.ranking.end(),
            [](const FusedScore &a, const FusedScore &b) {
              if (a.d_com != b.d_com) return a.d_com < b.d_com;
              return a.speaker_id < b.speaker_id;
            });
  out.predicted = out.ranking.front().speaker_id;
  return out;
}

void WriteScoreHeader(std::ostream &out) {
  out << "trial,speaker,kind,cmd,n_vectors,rank\n";
}

void WriteScores(std::ostream &out, const std::string &trial,
                 const Identification &id) {
  for (std::size_t r = 0; r < id.ranking.size(); ++r) {
    const CmdScore &s = id.ranking[r];
    out << trial << ',' << s.speaker_id << ',' << FeatureKindName(s.kind) << ','
        << s.cmd << ',' << s.n_vectors << ',' << r + 1 << '\n';
  }
}

void WriteFusedHeader(std::ostream &out) {
  out << "trial,speaker,cmd_dct,cmd_mfcc,alpha,d_com,rank\n";
}

void WriteFused(std::ostream &out, const std::string &trial,
                const FusedIdentification &id) {
  for (std::size_t r = 0; r < id.ranking.size(); ++r) {
    const FusedScore &s = id.ranking[r];
    out << trial << ',' << s.speaker_id << ',' << s.cmd_dct << ','
        << s.cmd_mfcc << ',' << id.alpha << ',' << s.d_com << ',' << r + 1
        << '\n';
  }
}

}  // namespace pssid
