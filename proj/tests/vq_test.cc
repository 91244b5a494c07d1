// tests/vq_test.cc
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

#include <fstream>
#include <iterator>
#include <limits>
#include <random>

#include "doctest.h"
#include "pssid/vq.h"
#include "test_util.h"

namespace pssid {
namespace {

std::vector<FeatureVector> Blobs(std::uint64_t seed, std::size_t per_blob) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 0.5);
  const double centres[4][2] = {{0, 0}, {10, 0}, {0, 10}, {10, 10}};
  std::vector<FeatureVector> out;
  for (const auto &c : centres)
    for (std::size_t i = 0; i < per_blob; ++i)
      out.push_back(test::Vec({c[0] + noise(gen), c[1] + noise(gen)}));
  return out;
}

// Plain Lloyd iterations from k random data points; returns the final mean
// squared distance.
double LloydFromRandomStart(const std::vector<FeatureVector> &data,
                            std::size_t k, std::mt19937_64 *gen) {
  std::vector<std::vector<double>> c;
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  while (c.size() < k) {
    const auto &v = data[pick(*gen)].values;
    if (std::find(c.begin(), c.end(), v) == c.end()) c.push_back(v);
  }
  const std::size_t dim = data[0].dim();
  std::vector<std::size_t> label(data.size());
  double distortion = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    distortion = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < k; ++j) {
        double d = 0.0;
        for (std::size_t t = 0; t < dim; ++t)
          d += (data[i].values[t] - c[j][t]) * (data[i].values[t] - c[j][t]);
        if (d < best) best = d, label[i] = j;
      }
      distortion += best;
    }
    std::vector<std::vector<double>> next(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      ++count[label[i]];
      for (std::size_t t = 0; t < dim; ++t) next[label[i]][t] += data[i].values[t];
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (count[j] == 0) {
        next[j] = c[j];
        continue;
      }
      for (double &v : next[j]) v /= static_cast<double>(count[j]);
    }
    c = next;
  }
  return distortion / static_cast<double>(data.size());
}

TEST_CASE("k = 1 gives the mean") {
  const std::vector<FeatureVector> v = {test::Vec({1, 2}), test::Vec({3, 6}),
                                        test::Vec({5, 1})};
  const Codebook cb = TrainCodebook(v, 1);
  REQUIRE(cb.centroids.size() == 1);
  CHECK(cb.centroids[0][0] == doctest::Approx(3.0));
  CHECK(cb.centroids[0][1] == doctest::Approx(3.0));
  CHECK(cb.k == 1);
  CHECK(cb.dim == 2);
  CHECK(cb.train_vector_count == 3);
  CHECK(cb.seed == kDefaultSeed);
}

TEST_CASE("k = number of distinct vectors reproduces them") {
  std::vector<FeatureVector> v = {test::Vec({0, 0}), test::Vec({1, 0}),
                                  test::Vec({0, 1}), test::Vec({5, 5}),
                                  test::Vec({1, 0})};
  CHECK(CountDistinct(v) == 4);
  const Codebook cb = TrainCodebook(v, 4);
  CHECK(Distortion(v, cb) == 0.0);
  auto got = cb.centroids;
  std::sort(got.begin(), got.end());
  const std::vector<std::vector<double>> want = {{0, 0}, {0, 1}, {1, 0}, {5, 5}};
  CHECK(got == want);
  CHECK_THROWS_AS(TrainCodebook(v, 5), Error);
  CHECK_THROWS_AS(TrainCodebook(v, 0), Error);
}

TEST_CASE("bad training data") {
  CHECK_THROWS_AS(TrainCodebook(std::vector<FeatureVector>{}, 1), Error);
  const std::vector<FeatureVector> mixed_dim = {test::Vec({1}),
                                                test::Vec({1, 2})};
  CHECK_THROWS_AS(TrainCodebook(mixed_dim, 1), Error);
  const std::vector<FeatureVector> mixed_kind = {
      test::Vec({1}), test::Vec({2}, FeatureKind::kMfcc)};
  CHECK_THROWS_AS(TrainCodebook(mixed_kind, 1), Error);
}

TEST_CASE("distortion") {
  Codebook cb;
  cb.k = 1;
  cb.dim = 2;
  cb.centroids = {{1, 1}};
  const std::vector<FeatureVector> one = {test::Vec({4, 5})};
  CHECK(Distortion(one, cb) == doctest::Approx(25.0));
  const std::vector<FeatureVector> on = {test::Vec({1, 1})};
  CHECK(Distortion(on, cb) == 0.0);
  CHECK_THROWS_AS(Distortion(std::vector<FeatureVector>{}, cb), Error);
  CHECK_THROWS_AS(Distortion(std::vector<FeatureVector>{test::Vec({1})}, cb),
                  Error);
  cb.k = 2;
  cb.centroids = {{0, 0}, {10, 10}};
  CHECK(Quantize(std::vector<double>{9, 8}, cb) == 1);
}

TEST_CASE("four blobs match the best of 50 random restarts") {
  const auto data = Blobs(21, 50);
  KMeansTrace trace;
  const Codebook cb = TrainCodebook(data, 4, kDefaultSeed, {}, &trace);
  CHECK(trace.converged);
  std::mt19937_64 gen(99);
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < 50; ++r)
    best = std::min(best, LloydFromRandomStart(data, 4, &gen));
  CHECK(Distortion(data, cb) <= 1.05 * best);
  CHECK(trace.distortion.back() == doctest::Approx(Distortion(data, cb)));
}

TEST_CASE("distortion never increases and centroids are cluster means") {
  std::mt19937_64 gen(5);
  std::vector<FeatureVector> data;
  for (int i = 0; i < 600; ++i) data.push_back(test::Vec(test::RandomFrame(&gen, 6)));
  for (std::size_t k : {2u, 8u, 32u}) {
    KMeansTrace trace;
    const Codebook cb = TrainCodebook(data, k, 7, {}, &trace);
    for (std::size_t i = 1; i < trace.distortion.size(); ++i)
      CHECK(trace.distortion[i] <= trace.distortion[i - 1] * (1.0 + 1e-12));
    if (!trace.converged) continue;
    std::vector<std::vector<double>> sum(k, std::vector<double>(6, 0.0));
    std::vector<std::size_t> n(k, 0);
    for (const FeatureVector &v : data) {
      const std::size_t j = Quantize(v.values, cb);
      ++n[j];
      for (std::size_t d = 0; d < 6; ++d) sum[j][d] += v.values[d];
    }
    for (std::size_t j = 0; j < k; ++j) {
      REQUIRE(n[j] > 0);
      for (std::size_t d = 0; d < 6; ++d)
        CHECK(std::abs(sum[j][d] / n[j] - cb.centroids[j][d]) < 1e-6);
    }
  }
}

TEST_CASE("empty clusters are re-seeded") {
  // Found by search: with seed 42 one Lloyd update leaves a cluster empty.
  const std::vector<FeatureVector> data = {
      test::Vec({2, 2}), test::Vec({4, 5}), test::Vec({5, 6}),
      test::Vec({3, 2}), test::Vec({2, 4}), test::Vec({1, 6})};
  KMeansTrace trace;
  const Codebook cb = TrainCodebook(data, 3, 42, {}, &trace);
  CHECK(trace.empty_cluster_reseeds >= 1);
  for (std::size_t i = 1; i < trace.distortion.size(); ++i)
    CHECK(trace.distortion[i] <= trace.distortion[i - 1]);
  std::vector<std::size_t> used(3, 0);
  for (const FeatureVector &v : data) ++used[Quantize(v.values, cb)];
  for (std::size_t n : used) CHECK(n > 0);
}

TEST_CASE("codebooks are reproducible byte for byte") {
  const auto data = Blobs(3, 40);
  Codebook a = TrainCodebook(data, 8, 123);
  Codebook b = TrainCodebook(data, 8, 123);
  a.speaker_id = b.speaker_id = "spk00";
  CHECK(a == b);
  test::TempDir dir("cb");
  SaveCodebook(dir.path() / "a.cb", a);
  SaveCodebook(dir.path() / "b.cb", b);
  auto slurp = [](const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return std::vector<char>(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(dir.path() / "a.cb") == slurp(dir.path() / "b.cb"));
  CHECK(LoadCodebook(dir.path() / "a.cb") == a);
  const Codebook c = TrainCodebook(data, 8, 124);
  CHECK(c.centroids != a.centroids);
}

TEST_CASE("codebook decoding rejects corrupt input") {
  Codebook a = TrainCodebook(Blobs(1, 10), 4);
  a.speaker_id = "x";
  auto bytes = EncodeCodebook(a);
  CHECK(DecodeCodebook(bytes) == a);
  auto bad = bytes;
  bad[0] = 'Q';
  CHECK_THROWS_AS(DecodeCodebook(bad), Error);
  bytes.pop_back();
  CHECK_THROWS_AS(DecodeCodebook(bytes), Error);
}

TEST_CASE("model directory round trip") {
  test::TempDir dir("model");
  std::vector<Codebook> books;
  for (const char *id : {"b", "a"}) {
    for (FeatureKind kind : {FeatureKind::kPsDct, FeatureKind::kMfcc}) {
      std::vector<FeatureVector> data = Blobs(id[0], 5);
      for (auto &v : data) v.kind = kind;
      Codebook cb = TrainCodebook(data, 4);
      cb.speaker_id = id;
      books.push_back(cb);
    }
  }
  ModelManifest m;
  m.psdct_coeffs = 20;
  m.accuracy_psdct = 0.9;
  SaveModel(dir.path(), books, m);
  const ModelManifest back = LoadManifest(dir.path());
  CHECK(back.entries.size() == 4);
  CHECK(back.psdct_coeffs == 20);
  CHECK(back.accuracy_psdct == 0.9);
  CHECK(back.accuracy_mfcc < 0.0);
  const auto dct = LoadModel(dir.path(), FeatureKind::kPsDct);
  REQUIRE(dct.size() == 2);
  CHECK(dct[0].speaker_id == "a");
  CHECK(dct[0] == books[2]);
  CHECK(dct[1] == books[0]);
}

}  // namespace
}  // namespace pssid
