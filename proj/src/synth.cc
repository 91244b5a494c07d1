// src/synth.cc
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
#include <cmath>
#include <cstdio>
#include <numbers>

#include "pssid/corpus.h"
#include "pssid/dsp.h"
#include "pssid/rng.h"

namespace pssid {

namespace {

constexpr double kMinPitchHz = 90.0;
constexpr double kMaxPitchHz = 260.0;
constexpr double kPeakLevel = 0.8;

std::string NumberedId(const char *prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%02zu", prefix, i);
  return buf;
}

bool TooClose(const SyntheticSpeaker &a, const SyntheticSpeaker &b) {
  return std::abs(a.formant_hz[0] - b.formant_hz[0]) < 40.0 &&
         std::abs(a.formant_hz[1] - b.formant_hz[1]) < 120.0 &&
         std::abs(a.formant_hz[2] - b.formant_hz[2]) < 150.0;
}

std::vector<SyntheticSpeaker> MakeSpeakers(std::size_t n, Rng *rng) {
  // Pitches are stratified over [95, 255] Hz so that every speaker gets its
  // own band; the band order is shuffled.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng->Below(i)]);

  const double lo = kMinPitchHz + 5.0, hi = kMaxPitchHz - 5.0;
  const double band = (hi - lo) / static_cast<double>(n);

  std::vector<SyntheticSpeaker> speakers;
  for (std::size_t i = 0; i < n; ++i) {
    SyntheticSpeaker s;
    s.speaker_id = NumberedId("spk", i);
    s.pitch_hz = lo + band * (static_cast<double>(order[i]) +
                              rng->Uniform(0.2, 0.8));
    for (int attempt = 0;; ++attempt) {
      s.formant_hz[0] = rng->Uniform(300.0, 850.0);
      s.formant_hz[1] = rng->Uniform(std::max(900.0, s.formant_hz[0] + 300.0),
                                     2400.0);
      s.formant_hz[2] = rng->Uniform(2500.0, 3500.0);
      const bool clash = std::any_of(
          speakers.begin(), speakers.end(),
          [&](const SyntheticSpeaker &o) { return TooClose(s, o); });
      if (!clash || attempt > 100) break;
    }
    s.bandwidth_hz[0] = rng->Uniform(60.0, 100.0);
    s.bandwidth_hz[1] = rng->Uniform(80.0, 140.0);
    s.bandwidth_hz[2] = rng->Uniform(120.0, 200.0);
    speakers.push_back(s);
  }
  return speakers;
}

Utterance MakeUtterance(const SyntheticSpeaker &spk, std::size_t index,
                        const SynthOptions &opt, Rng *rng) {
  const double fs = opt.sample_rate;
  const auto total =
      static_cast<std::size_t>(std::lround(opt.utterance_seconds * fs));
  const auto secs = [fs](double s) {
    return static_cast<std::size_t>(std::lround(s * fs));
  };
  const double nominal = fs / spk.pitch_hz;
  const double min_period = fs / kMaxPitchHz, max_period = fs / kMinPitchHz;
  const std::size_t ramp = secs(0.015);

  std::vector<double> excitation(total, 0.0);
  std::vector<PhoneSegment> segments;
  std::vector<std::size_t> gci;

  std::size_t pos = secs(rng->Uniform(0.08, 0.16));
  segments.push_back({0, pos, "h#"});
  for (;;) {
    const std::size_t run = secs(rng->Uniform(0.25, 0.5));
    const std::size_t tail = secs(0.06);
    if (pos + run + tail > total) break;
    const std::size_t run_end = pos + run;
    double t = static_cast<double>(pos) + rng->Uniform(0.0, 0.5) * nominal;
    while (t < static_cast<double>(run_end)) {
      const auto n = static_cast<std::size_t>(std::lround(t));
      if (n >= run_end) break;
      const std::size_t from_edge = std::min(n - pos, run_end - 1 - n);
      double env = 1.0;
      if (from_edge < ramp)
        env = 0.5 - 0.5 * std::cos(std::numbers::pi * (from_edge + 1) /
                                   static_cast<double>(ramp + 1));
      // Glottal closure excites the tract with a negative pulse (the peak of
      // the negative flow derivative).
      excitation[n] = -env * (1.0 + 0.05 * rng->Uniform(-1.0, 1.0));
      gci.push_back(n);
      const double period = std::clamp(
          nominal * (1.0 + opt.jitter * rng->Uniform(-1.0, 1.0)), min_period,
          max_period);
      t += period;
    }
    segments.push_back({pos, run_end, "v"});
    const std::size_t gap = secs(rng->Uniform(0.08, 0.2));
    const std::size_t next = std::min(total, run_end + gap);
    segments.push_back({run_end, next, "h#"});
    pos = next;
    if (pos >= total) break;
  }
  if (pos < total) {
    if (segments.back().phone == "h#")
      segments.back().end = total;
    else
      segments.push_back({pos, total, "h#"});
  }

  std::vector<double> wave = excitation;
  for (int i = 0; i < 3; ++i) {
    const auto coeffs = dsp::ResonatorCoeffs::Design(
        spk.formant_hz[i], spk.bandwidth_hz[i], fs);
    wave = dsp::Resonate(wave, coeffs);
  }
  double peak = 0.0;
  for (double v : wave) peak = std::max(peak, std::abs(v));
  if (peak <= 0.0) peak = 1.0;
  for (double &v : wave) v = v / peak + opt.noise_level * rng->Normal();
  peak = 0.0;
  for (double v : wave) peak = std::max(peak, std::abs(v));
  for (double &v : wave) v = QuantizeToPcm16(kPeakLevel * v / peak);

  Utterance utt;
  utt.samples = std::move(wave);
  utt.sample_rate = fs;
  utt.speaker_id = spk.speaker_id;
  utt.utterance_id = NumberedId("u", index);
  utt.segments = std::move(segments);
  utt.true_gci = std::move(gci);
  return utt;
}

}  // namespace

SyntheticCorpus SynthCorpus(std::size_t n_speakers,
                            std::size_t utterances_per_speaker,
                            std::uint64_t seed, const SynthOptions &options) {
  if (n_speakers < 2) throw Error("SynthCorpus: need at least 2 speakers");
  if (options.sample_rate <= 0.0) throw Error("SynthCorpus: bad sample rate");
  Rng rng(seed);
  SyntheticCorpus corpus;
  corpus.speakers = MakeSpeakers(n_speakers, &rng);
  for (const SyntheticSpeaker &spk : corpus.speakers) {
    for (std::size_t u = 0; u < utterances_per_speaker; ++u)
      corpus.utterances.push_back(MakeUtterance(spk, u, options, &rng));
  }
  return corpus;
}

}  // namespace pssid
