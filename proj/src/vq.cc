// src/vq.cc
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

#include "pssid/vq.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pssid/rng.h"

namespace pssid {

namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void CheckHomogeneous(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) throw Error("k-means: no training vectors");
  const FeatureKind kind = vectors[0].kind;
  const std::size_t dim = vectors[0].dim();
  if (dim == 0) throw Error("k-means: zero-dimensional vectors");
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    if (vectors[i].kind != kind)
      throw Error("k-means: mixed feature kinds in training data");
    if (vectors[i].dim() != dim)
      throw Error("k-means: dimension mismatch at vector " + std::to_string(i) +
                  " (" + std::to_string(vectors[i].dim()) + " vs " +
                  std::to_string(dim) + ")");
  }
}

struct Assignment {
  std::vector<std::size_t> label;
  std::vector<double> dist2;
  double distortion = 0.0;
};

void Assign(std::span<const FeatureVector> data,
            const std::vector<std::vector<double>> &centroids,
            Assignment *out) {
  const std::size_t n = data.size();
  out->label.resize(n);
  out->dist2.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centroids.size(); ++j) {
      const double d = SquaredDistance(data[i].values, centroids[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    out->label[i] = best;
    out->dist2[i] = best_d;
    total += best_d;
  }
  out->distortion = total / static_cast<double>(n);
}

std::vector<std::vector<double>> KMeansPlusPlus(
    std::span<const FeatureVector> data, std::size_t k, Rng *rng) {
  const std::size_t n = data.size();
  std::vector<std::vector<double>> centroids;
  centroids.push_back(data[rng->Below(n)].values);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i)
    d2[i] = SquaredDistance(data[i].values, centroids[0]);
  while (centroids.size() < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    if (!(total > 0.0))
      throw std::logic_error("k-means++: ran out of distinct vectors");
    const double target = rng->Uniform() * total;
    double cum = 0.0;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] <= 0.0) continue;
      cum += d2[i];
      pick = i;
      if (cum > target) break;
    }
    centroids.push_back(data[pick].values);
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], SquaredDistance(data[i].values,
                                              centroids.back()));
  }
  return centroids;
}

}  // namespace

std::size_t CountDistinct(std::span<const FeatureVector> vectors) {
  std::vector<const std::vector<double> *> ptrs;
  ptrs.reserve(vectors.size());
  for (const FeatureVector &v : vectors) ptrs.push_back(&v.values);
  std::sort(ptrs.begin(), ptrs.end(),
            [](const auto *a, const auto *b) { return *a < *b; });
  return static_cast<std::size_t>(
      std::unique(ptrs.begin(), ptrs.end(),
                  [](const auto *a, const auto *b) { return *a == *b; }) -
      ptrs.begin());
}

Codebook TrainCodebook(std::span<const FeatureVector> vectors, std::size_t k,
                       std::uint64_t seed, const KMeansOptions &options,
                       KMeansTrace *trace) {
  CheckHomogeneous(vectors);
  if (k == 0) throw Error("k-means: codebook size must be >= 1");
  const std::size_t distinct = CountDistinct(vectors);
  if (k > distinct)
    throw Error("k-means: codebook size " + std::to_string(k) + " exceeds " +
                std::to_string(distinct) + " distinct training vectors");

  const std::size_t n = vectors.size();
  const std::size_t dim = vectors[0].dim();

  std::vector<double> mean(dim, 0.0);
  for (const FeatureVector &v : vectors)
    for (std::size_t d = 0; d < dim; ++d) mean[d] += v.values[d];
  for (double &m : mean) m /= static_cast<double>(n);
  double spread = 0.0;
  for (const FeatureVector &v : vectors) spread += SquaredDistance(v.values, mean);
  double scale = std::sqrt(spread / static_cast<double>(n));
  if (!(scale > 0.0)) scale = 1.0;

  Rng rng(seed);
  std::vector<std::vector<double>> centroids = KMeansPlusPlus(vectors, k, &rng);

  KMeansTrace local;
  KMeansTrace &tr = trace ? *trace : local;
  tr = KMeansTrace{};

  Assignment a;
  std::vector<std::size_t> counts(k);
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    Assign(vectors, centroids, &a);
    if (!tr.distortion.empty()) {
      const double prev = tr.distortion.back();
      if (a.distortion > prev * (1.0 + 1e-9) + 1e-300)
        throw std::logic_error("k-means: distortion increased from " +
                               std::to_string(prev) + " to " +
                               std::to_string(a.distortion));
    }
    tr.distortion.push_back(a.distortion);
    tr.iterations = iter + 1;

    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[a.label[i]];
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] > 0) continue;
      // Farthest vector from its centroid, taken from a cluster that can
      // spare it.
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[a.label[i]] < 2) continue;
        if (far == n || a.dist2[i] > a.dist2[far]) far = i;
      }
      if (far == n) throw std::logic_error("k-means: cannot re-seed cluster");
      --counts[a.label[far]];
      a.label[far] = j;
      a.dist2[far] = 0.0;
      counts[j] = 1;
      ++tr.empty_cluster_reseeds;
    }

    std::vector<std::vector<double>> next(k, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> &c = next[a.label[i]];
      for (std::size_t d = 0; d < dim; ++d) c[d] += vectors[i].values[d];
    }
    double movement = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      for (double &v : next[j]) v /= static_cast<double>(counts[j]);
      movement = std::max(movement,
                          std::sqrt(SquaredDistance(next[j], centroids[j])));
    }
    centroids = std::move(next);
    if (movement < options.tolerance * scale) {
      tr.converged = true;
      break;
    }
  }

  Codebook cb;
  cb.kind = vectors[0].kind;
  cb.k = k;
  cb.dim = dim;
  cb.centroids = std::move(centroids);
  cb.seed = seed;
  cb.train_vector_count = n;
  return cb;
}

std::size_t Quantize(std::span<const double> v, const Codebook &codebook) {
  if (v.size() != codebook.dim) throw Error("Quantize: dimension mismatch");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < codebook.centroids.size(); ++j) {
    const double d = SquaredDistance(v, codebook.centroids[j]);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

double Distortion(std::span<const FeatureVector> vectors,
                  const Codebook &codebook) {
  if (vectors.empty()) throw Error("Distortion: empty vector list");
  double total = 0.0;
  for (const FeatureVector &v : vectors) {
    if (v.kind != codebook.kind || v.dim() != codebook.dim)
      throw Error("Distortion: vector does not match codebook kind/dim");
    total += SquaredDistance(v.values,
                             codebook.centroids[Quantize(v.values, codebook)]);
  }
  return total / static_cast<double>(vectors.size());
}

}  // namespace pssid
