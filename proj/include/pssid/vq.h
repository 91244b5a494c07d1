// include/pssid/vq.h
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

#ifndef PSSID_VQ_H_
#define PSSID_VQ_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pssid/types.h"

namespace pssid {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct Codebook {
  std::string speaker_id;
  FeatureKind kind = FeatureKind::kPsDct;
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<std::vector<double>> centroids;
  std::uint64_t seed = kDefaultSeed;
  std::size_t train_vector_count = 0;

  bool operator==(const Codebook &) const = default;
};

struct KMeansOptions {
  std::size_t max_iterations = 300;
  // Stop once no centroid moves more than tolerance * data scale, where the
  // data scale is the RMS distance of the vectors from their mean.
  double tolerance = 1e-6;
};

// Per-iteration diagnostics of one training run.
struct KMeansTrace {
  // distortion[i]: mean squared distance to the nearest centroid under the
  // assignment made at iteration i.
  std::vector<double> distortion;
  std::size_t iterations = 0;
  std::size_t empty_cluster_reseeds = 0;
  bool converged = false;
};

// k-means++ initialization from `seed`, then Lloyd iterations. Empty clusters
// are re-seeded with the vector farthest from its centroid. Deterministic in
// (vectors, k, seed, options). Throws Error on empty input, mixed
// kind/dimension, or k larger than the number of distinct vectors. Asserts
// that distortion never increases between iterations.
Codebook TrainCodebook(std::span<const FeatureVector> vectors, std::size_t k,
                       std::uint64_t seed = kDefaultSeed,
                       const KMeansOptions &options = {},
                       KMeansTrace *trace = nullptr);

// Mean squared Euclidean distance to the nearest centroid.
double Distortion(std::span<const FeatureVector> vectors,
                  const Codebook &codebook);

// Index of the nearest centroid (squared Euclidean; lowest index on ties).
std::size_t Quantize(std::span<const double> v, const Codebook &codebook);

std::size_t CountDistinct(std::span<const FeatureVector> vectors);

// ---------------------------------------------------------------------------
// Codebook files. Little-endian layout:
//   char[8]  magic "PSSIDCB\0"
//   u32      version (1)
//   u32      kind (0 = psdct, 1 = mfcc)
//   u32      k
//   u32      dim
//   u64      seed
//   u64      train_vector_count
//   u32      speaker id length, followed by the id bytes
//   f64      centroids, k * dim values, row-major

inline constexpr std::uint32_t kCodebookVersion = 1;

std::vector<std::uint8_t> EncodeCodebook(const Codebook &codebook);
Codebook DecodeCodebook(std::span<const std::uint8_t> bytes);
void SaveCodebook(const std::filesystem::path &path, const Codebook &codebook);
Codebook LoadCodebook(const std::filesystem::path &path);

// A model directory holds one codebook file per (speaker, kind) and a
// manifest.json listing them together with the feature settings used.
struct ModelManifest {
  struct Entry {
    std::string speaker_id;
    FeatureKind kind;
    std::size_t k;
    std::string file;
  };
  std::vector<Entry> entries;
  std::size_t psdct_coeffs = 15;
  // Accuracies used for fusion, when known (negative when absent).
  double accuracy_psdct = -1.0;
  double accuracy_mfcc = -1.0;
};

void SaveModel(const std::filesystem::path &dir,
               std::span<const Codebook> codebooks, ModelManifest manifest);
ModelManifest LoadManifest(const std::filesystem::path &dir);
// Codebooks of one kind, sorted by speaker id.
std::vector<Codebook> LoadModel(const std::filesystem::path &dir,
                                FeatureKind kind);

}  // namespace pssid

#endif  // PSSID_VQ_H_
