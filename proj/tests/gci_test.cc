// tests/gci_test.cc
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

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "pssid/dsp.h"
#include "pssid/gci.h"
#include "test_util.h"

namespace pssid {
namespace {

std::vector<std::size_t> Gaps(const std::vector<std::size_t> &p) {
  std::vector<std::size_t> g;
  for (std::size_t i = 1; i < p.size(); ++i) g.push_back(p[i] - p[i - 1]);
  return g;
}

// Negative impulse train through a single formant resonator.
VoicedRegion VowelLike(double f0, double seconds) {
  VoicedRegion r = test::ImpulseTrain(16000.0, seconds, 16000.0 / f0, 21.0,
                                      -1.0);
  const auto c = dsp::ResonatorCoeffs::Design(500.0, 80.0, 16000.0);
  r.samples = dsp::Resonate(r.samples, c);
  return r;
}

TEST_CASE("epochs of a 100 Hz impulse train") {
  const VoicedRegion r = test::ImpulseTrain(16000.0, 0.5, 160.0, 13.0);
  const EpochList e = DetectGci(r);
  CHECK(e.usable());
  CHECK(e.method == "zff");
  CHECK(e.positions.size() >= 44);
  CHECK(e.positions.size() <= 51);
  for (std::size_t g : Gaps(e.positions)) {
    CHECK(g >= 156);
    CHECK(g <= 164);
  }
}

TEST_CASE("epochs of a 200 Hz impulse train") {
  const VoicedRegion r = test::ImpulseTrain(16000.0, 0.5, 80.0, 5.0);
  const EpochList e = DetectGci(r);
  REQUIRE(e.usable());
  auto g = Gaps(e.positions);
  std::nth_element(g.begin(), g.begin() + g.size() / 2, g.end());
  CHECK(g[g.size() / 2] == 80);
}

TEST_CASE("silence yields too few epochs") {
  VoicedRegion r;
  r.samples.assign(8000, 0.0);
  const EpochList e = DetectGci(r);
  CHECK(e.status == EpochList::Status::kTooFewEpochs);
  CHECK_FALSE(e.usable());
  CHECK(e.positions.size() < 2);
}

TEST_CASE("regions shorter than one maximum period are rejected") {
  VoicedRegion r;
  r.samples.assign(266, 0.1);
  CHECK_THROWS_AS(DetectGci(r), Error);
}

TEST_CASE("epochs land on the excitation of a vowel-like signal") {
  const VoicedRegion r = VowelLike(125.0, 0.5);
  const EpochList e = DetectGci(r);
  REQUIRE(e.usable());
  std::size_t near = 0;
  for (std::size_t p : e.positions) {
    // Impulses at 21 + 128 k.
    const long off = (static_cast<long>(p) - 21 + 64) % 128 - 64;
    if (std::labs(off) <= 4) ++near;
  }
  CHECK(static_cast<double>(near) >= 0.95 * e.positions.size());
}

TEST_CASE("map_to_peaks keeps an epoch that sits on the peak") {
  VoicedRegion r;
  r.samples.assign(1000, 0.0);
  for (int d = -30; d <= 30; ++d) r.samples[500 + d] = 1.0 - std::abs(d) / 31.0;
  EpochList e;
  e.positions = {500};
  e.trend_window = 161;
  CHECK(MapToPeaks(r, e) == std::vector<std::size_t>{500});
}

TEST_CASE("map_to_peaks moves an epoch to the nearby sharp peak") {
  VoicedRegion r;
  r.samples.assign(1000, 0.0);
  for (std::size_t i = 0; i < r.samples.size(); ++i)
    r.samples[i] = 0.01 * std::sin(0.3 * static_cast<double>(i));
  r.samples[500] = 1.0;
  EpochList e;
  e.positions = {495};
  e.trend_window = 160;
  const auto peaks = MapToPeaks(r, e);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0] == 500);
  // Oracle: the argmax of the +-T/4 window.
  const auto it = std::max_element(r.samples.begin() + 455,
                                   r.samples.begin() + 536);
  CHECK(static_cast<std::size_t>(it - r.samples.begin()) == peaks[0]);
}

TEST_CASE("map_to_peaks drops duplicates") {
  VoicedRegion r;
  r.samples.assign(1000, 0.0);
  r.samples[500] = 1.0;
  EpochList e;
  e.positions = {495, 505};
  CHECK(MapToPeaks(r, e) == std::vector<std::size_t>{500});
}

TEST_CASE("map_to_peaks only returns local maxima") {
  VoicedRegion r;
  r.samples.resize(1000);
  for (std::size_t i = 0; i < r.samples.size(); ++i)
    r.samples[i] = static_cast<double>(i);
  EpochList e;
  e.positions = {500};
  e.trend_window = 160;
  CHECK(MapToPeaks(r, e).empty());
}

TEST_CASE("segment_cycles cuts between consecutive peaks") {
  VoicedRegion r;
  r.samples.assign(400, 0.5);
  const std::vector<std::size_t> peaks = {10, 170, 330};
  const auto cycles = SegmentCycles(r, peaks, 3);
  REQUIRE(cycles.size() == 2);
  for (const PitchCycle &c : cycles) {
    CHECK(c.length() == 160);
    CHECK(c.samples.size() == 160);
    CHECK(c.region_id == 3);
  }
  CHECK(cycles[1].start_peak == 170);
  CHECK(cycles[1].end_peak == 330);

  CHECK(SegmentCycles(r, std::vector<std::size_t>{10, 20}).empty());
  CHECK(SegmentCycles(r, std::vector<std::size_t>{10, 340}).empty());
  VoicedRegion silent;
  silent.samples.assign(400, 0.0);
  CHECK(SegmentCycles(silent, peaks).empty());
}

TEST_CASE("full chain on a 100 Hz vowel-like region") {
  const VoicedRegion r = VowelLike(100.0, 0.5);
  const EpochList e = DetectGci(r);
  REQUIRE(e.usable());
  const auto peaks = MapToPeaks(r, e);
  const auto cycles = SegmentCycles(r, peaks);
  CHECK(cycles.size() >= 45);
  for (const PitchCycle &c : cycles) {
    CHECK(c.length() >= 156);
    CHECK(c.length() <= 164);
  }
}

TEST_CASE("gci dump has one row per epoch") {
  const VoicedRegion r = VowelLike(150.0, 0.3);
  const EpochList e = DetectGci(r);
  std::ostringstream out;
  WriteGciDumpHeader(out);
  WriteGciDump(out, 7, r, e);
  const std::string s = out.str();
  CHECK(s.rfind("region_id,epoch,mapped_peak\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')) ==
        e.positions.size() + 1);
  CHECK(s.find("\n7,") != std::string::npos);
}

}  // namespace
}  // namespace pssid
