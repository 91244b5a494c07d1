// tests/classify_test.cc
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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pssid/classify.h"
#include "test_util.h"

namespace pssid {
namespace {

Codebook Book(std::string id, std::vector<std::vector<double>> c,
              FeatureKind kind = FeatureKind::kPsDct) {
  Codebook cb;
  cb.speaker_id = std::move(id);
  cb.kind = kind;
  cb.k = c.size();
  cb.dim = c[0].size();
  cb.centroids = std::move(c);
  return cb;
}

std::vector<CmdScore> Scores(const std::vector<double> &cmd,
                             FeatureKind kind) {
  std::vector<CmdScore> out;
  for (std::size_t i = 0; i < cmd.size(); ++i)
    out.push_back({"s" + std::to_string(i), kind, cmd[i], 10});
  return out;
}

TEST_CASE("cmd sums unsquared nearest distances") {
  const Codebook cb = Book("a", {{3, 0}, {0, 5}});
  const std::vector<FeatureVector> v = {test::Vec({0, 0})};
  const CmdScore s = Cmd(v, cb);
  CHECK(s.cmd == doctest::Approx(3.0));
  CHECK(s.n_vectors == 1);
  CHECK(s.speaker_id == "a");
  const std::vector<FeatureVector> exact = {test::Vec({3, 0}),
                                            test::Vec({0, 5})};
  CHECK(Cmd(exact, cb).cmd == 0.0);
}

TEST_CASE("cmd matches a brute-force double loop") {
  std::mt19937_64 gen(10);
  std::vector<std::vector<double>> c;
  for (int j = 0; j < 8; ++j) c.push_back(test::RandomFrame(&gen, 15));
  const Codebook cb = Book("a", c);
  std::vector<FeatureVector> v;
  for (int i = 0; i < 50; ++i) v.push_back(test::Vec(test::RandomFrame(&gen, 15)));
  double ref = 0.0;
  for (const auto &x : v) {
    double best = 1e300;
    for (const auto &y : c) {
      double d = 0.0;
      for (std::size_t t = 0; t < 15; ++t)
        d += (x.values[t] - y[t]) * (x.values[t] - y[t]);
      best = std::min(best, std::sqrt(d));
    }
    ref += best;
  }
  CHECK(std::abs(Cmd(v, cb).cmd - ref) < 1e-9);
}

TEST_CASE("cmd input checks") {
  const Codebook cb = Book("a", {{0, 0}});
  CHECK_THROWS_AS(Cmd(std::vector<FeatureVector>{}, cb), Error);
  CHECK_THROWS_AS(Cmd(std::vector<FeatureVector>{test::Vec({1})}, cb), Error);
  CHECK_THROWS_AS(
      Cmd(std::vector<FeatureVector>{test::Vec({1, 1}, FeatureKind::kMfcc)},
          cb),
      Error);
}

TEST_CASE("identify picks the least cmd") {
  const std::vector<Codebook> one = {Book("only", {{1, 1}})};
  const std::vector<FeatureVector> v = {test::Vec({7, 7})};
  CHECK(Identify(v, one).predicted == "only");

  const std::vector<Codebook> two = {Book("b", {{5, 5}, {6, 6}}),
                                     Book("a", {{0, 0}, {1, 2}})};
  const std::vector<FeatureVector> from_a = {test::Vec({0, 0}),
                                             test::Vec({1, 2})};
  const Identification id = Identify(from_a, two);
  CHECK(id.predicted == "a");
  CHECK(id.ranking[0].cmd == 0.0);
  CHECK(id.ranking[1].speaker_id == "b");
  CHECK_THROWS_AS(Identify(from_a, std::vector<Codebook>{}), Error);
}

TEST_CASE("identify breaks ties by speaker id") {
  const std::vector<Codebook> books = {Book("z", {{1, 0}}), Book("m", {{-1, 0}})};
  const std::vector<FeatureVector> v = {test::Vec({0, 0})};
  CHECK(Identify(v, books).predicted == "m");
}

TEST_CASE("fusion weights") {
  CHECK(FusionWeights(0.9, 0.9).alpha() == 0.5);
  CHECK(FusionWeights(96.7, 96.7).alpha() == 0.5);
  CHECK(FusionWeights(1.0, 0.0).alpha() == 1.0);
  CHECK(FusionWeights(0.75, 0.25).alpha() == doctest::Approx(0.75));
  CHECK_THROWS_AS(FusionWeights(0.0, 0.0), Error);
  CHECK_THROWS_AS(FusionWeights(-0.1, 0.5), Error);
}

TEST_CASE("fused score is the convex combination") {
  const auto d = Scores({1.0, 4.0}, FeatureKind::kPsDct);
  const auto m = Scores({3.0, 2.0}, FeatureKind::kMfcc);
  const FusedIdentification f = Fuse(d, m, FusionWeights(3.0, 1.0));
  CHECK(f.alpha == doctest::Approx(0.75));
  REQUIRE(f.ranking.size() == 2);
  CHECK(f.ranking[0].speaker_id == "s0");
  CHECK(f.ranking[0].d_com == doctest::Approx(0.75 * 1.0 + 0.25 * 3.0));
  CHECK(f.ranking[1].d_com == doctest::Approx(0.75 * 4.0 + 0.25 * 2.0));
  CHECK(f.predicted == "s0");
  const FusedIdentification g = Fuse(d, m, FusionWeights(0.0, 1.0));
  CHECK(g.predicted == "s1");
}

TEST_CASE("fusion keeps a shared strict argmin for every alpha") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::uniform_int_distribution<std::size_t> who(0, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> d(10), m(10);
    for (auto &x : d) x = u(gen);
    for (auto &x : m) x = u(gen);
    const std::size_t s = who(gen);
    d[s] = *std::min_element(d.begin(), d.end()) * 0.9;
    m[s] = *std::min_element(m.begin(), m.end()) * 0.9;
    const auto ds = Scores(d, FeatureKind::kPsDct);
    const auto ms = Scores(m, FeatureKind::kMfcc);
    for (int a = 0; a <= 10; ++a) {
      const double alpha = a / 10.0;
      const FusedIdentification f =
          Fuse(ds, ms, FusionWeights(alpha, 1.0 - alpha));
      REQUIRE(f.predicted == "s" + std::to_string(s));
    }
  }
}

TEST_CASE("fusion checks speaker sets") {
  const auto d = Scores({1.0, 2.0}, FeatureKind::kPsDct);
  const auto m = Scores({1.0}, FeatureKind::kMfcc);
  CHECK_THROWS_AS(Fuse(d, m, FusionWeights(1, 1)), Error);
  auto renamed = Scores({1.0, 2.0}, FeatureKind::kMfcc);
  renamed[1].speaker_id = "other";
  CHECK_THROWS_AS(Fuse(d, renamed, FusionWeights(1, 1)), Error);
}

TEST_CASE("count normalization") {
  auto d = Scores({10.0, 12.0}, FeatureKind::kPsDct);
  auto m = Scores({10.0, 12.0}, FeatureKind::kMfcc);
  d[0].n_vectors = 10;
  d[1].n_vectors = 20;
  m[0].n_vectors = 10;
  m[1].n_vectors = 20;
  CHECK(Fuse(d, m, FusionWeights(1, 1)).predicted == "s0");
  FusionOptions opt;
  opt.normalize_by_count = true;
  CHECK(Fuse(d, m, FusionWeights(1, 1), opt).predicted == "s1");
}

TEST_CASE("score csv") {
  const std::vector<Codebook> books = {Book("a", {{0.0}}), Book("b", {{2.0}})};
  const std::vector<FeatureVector> v = {test::Vec({0.5})};
  std::ostringstream out;
  WriteScoreHeader(out);
  WriteScores(out, "t1", Identify(v, books));
  CHECK(out.str() ==
        "trial,speaker,kind,cmd,n_vectors,rank\n"
        "t1,a,psdct,0.5,1,1\n"
        "t1,b,psdct,1.5,1,2\n");
}

}  // namespace
}  // namespace pssid
