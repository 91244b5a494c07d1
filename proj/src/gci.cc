// src/gci.cc
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

#include "pssid/gci.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>

#include "pssid/dsp.h"

namespace pssid {

namespace {

// Peak for every epoch, or nullopt when no local maximum lies in its window.
std::vector<std::optional<std::size_t>> PeakPerEpoch(
    const VoicedRegion &region, const EpochList &epochs) {
  const std::vector<double> &x = region.samples;
  const std::vector<std::size_t> &e = epochs.positions;
  const std::size_t n = x.size();
  const std::size_t min_p = MinPitchPeriod(region.sample_rate);
  const std::size_t max_p = MaxPitchPeriod(region.sample_rate);

  auto is_local_max = [&](std::size_t i) {
    return (i == 0 || x[i] >= x[i - 1]) && (i + 1 >= n || x[i] >= x[i + 1]);
  };

  std::vector<std::optional<std::size_t>> out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= n) continue;
    std::size_t gap_sum = 0, gaps = 0;
    if (i > 0) gap_sum += e[i] - e[i - 1], ++gaps;
    if (i + 1 < e.size()) gap_sum += e[i + 1] - e[i], ++gaps;
    std::size_t period = gaps ? gap_sum / gaps : epochs.trend_window;
    if (period == 0) period = max_p;
    period = std::clamp(period, min_p, max_p);
    const std::size_t half = period / 4;
    const std::size_t lo = e[i] >= half ? e[i] - half : 0;
    const std::size_t hi = std::min(n - 1, e[i] + half);
    std::optional<std::size_t> best;
    for (std::size_t j = lo; j <= hi; ++j) {
      if (is_local_max(j) && (!best || x[j] > x[*best])) best = j;
    }
    out[i] = best;
  }
  return out;
}

}  // namespace

EpochList DetectGci(const VoicedRegion &region, const GciOptions &options) {
  const std::size_t min_p = MinPitchPeriod(region.sample_rate);
  const std::size_t max_p = MaxPitchPeriod(region.sample_rate);
  const std::vector<double> &x = region.samples;
  if (x.size() < max_p)
    throw Error("DetectGci: region of " + std::to_string(x.size()) +
                " samples is shorter than one maximum pitch period (" +
                std::to_string(max_p) + ")");

  EpochList result;
  result.method = "zff";

  // Differenced signal, which removes DC and any slowly varying offset.
  std::vector<double> d(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) d[i] = x[i] - x[i - 1];

  const auto zf = dsp::ResonatorCoeffs::ZeroFrequency(region.sample_rate);
  std::vector<double> y = dsp::Resonate(dsp::Resonate(d, zf), zf);

  const std::size_t period = dsp::AutocorrPitch(x, min_p, max_p);
  const std::size_t window = period | 1;
  result.trend_window = window;
  for (int pass = 0; pass < options.trend_passes; ++pass) {
    const std::vector<double> trend = dsp::MovingAverage(y, window);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= trend[i];
  }

  // The trend estimate is biased where its window is clipped by the region
  // edges; crossings there are unreliable.
  const std::size_t guard =
      std::min(x.size() / 2,
               static_cast<std::size_t>(options.trend_passes) * (window / 2));
  for (std::size_t i = std::max<std::size_t>(1, guard);
       i + guard < y.size(); ++i) {
    if (y[i - 1] < 0.0 && y[i] >= 0.0) {
      const std::size_t pos = (-y[i - 1] < y[i]) ? i - 1 : i;
      if (!result.positions.empty() && pos - result.positions.back() < min_p)
        continue;
      result.positions.push_back(pos);
    }
  }
  if (result.positions.size() < 2)
    result.status = EpochList::Status::kTooFewEpochs;
  return result;
}

std::vector<std::size_t> MapToPeaks(const VoicedRegion &region,
                                    const EpochList &epochs) {
  std::vector<std::size_t> peaks;
  for (const auto &p : PeakPerEpoch(region, epochs)) {
    if (p) peaks.push_back(*p);
  }
  std::sort(peaks.begin(), peaks.end());
  peaks.erase(std::unique(peaks.begin(), peaks.end()), peaks.end());
  return peaks;
}

std::vector<PitchCycle> SegmentCycles(const VoicedRegion &region,
                                      std::span<const std::size_t> peaks,
                                      std::size_t region_id) {
  const std::size_t min_p = MinPitchPeriod(region.sample_rate);
  const std::size_t max_p = MaxPitchPeriod(region.sample_rate);
  std::vector<PitchCycle> cycles;
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
    const std::size_t a = peaks[i], b = peaks[i + 1];
    if (b <= a || b > region.samples.size()) continue;
    const std::size_t len = b - a;
    if (len < min_p || len > max_p) continue;
    PitchCycle c;
    c.samples.assign(region.samples.begin() + a, region.samples.begin() + b);
    const double energy = std::inner_product(c.samples.begin(), c.samples.end(),
                                             c.samples.begin(), 0.0);
    if (!(energy > 0.0)) continue;
    c.start_peak = a;
    c.end_peak = b;
    c.region_id = region_id;
    cycles.push_back(std::move(c));
  }
  return cycles;
}

void WriteGciDumpHeader(std::ostream &out) {
  out << "region_id,epoch,mapped_peak\n";
}

void WriteGciDump(std::ostream &out, std::size_t region_id,
                  const VoicedRegion &region, const EpochList &epochs) {
  const auto peaks = PeakPerEpoch(region, epochs);
  for (std::size_t i = 0; i < epochs.positions.size(); ++i) {
    out << region_id << ',' << epochs.positions[i] << ',';
    if (peaks[i]) out << *peaks[i];
    out << '\n';
  }
}

}  // namespace pssid
