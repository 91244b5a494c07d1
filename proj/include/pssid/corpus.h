// include/pssid/corpus.h
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

#ifndef PSSID_CORPUS_H_
#define PSSID_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pssid/types.h"

namespace pssid {

struct PhoneSegment {
  std::size_t begin = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  std::string phone;

  bool operator==(const PhoneSegment &) const = default;
};

struct Utterance {
  std::vector<double> samples;  // in [-1, 1]
  double sample_rate = 16000.0;
  std::string speaker_id;
  std::string utterance_id;
  std::optional<std::vector<PhoneSegment>> segments;
  // Excitation impulse positions; only known for synthetic utterances.
  std::optional<std::vector<std::size_t>> true_gci;
};

struct VoicedRegion {
  std::vector<double> samples;
  std::size_t source_offset = 0;
  double sample_rate = 16000.0;
};

struct SpeakerSplit {
  std::string speaker_id;
  std::vector<const Utterance *> train;
  std::vector<const Utterance *> test;
};

// Pitch-period limits in samples: 400 Hz and 60 Hz at the given rate.
std::size_t MinPitchPeriod(double sample_rate);
std::size_t MaxPitchPeriod(double sample_rate);

// ---------------------------------------------------------------------------
// WAV I/O (RIFF/WAVE, 16-bit PCM, mono).

class WavError : public Error {
 public:
  enum class Code {
    kIo,
    kMalformedHeader,
    kSphereContainer,
    kNotPcm,
    kNotMono,
    kBitDepth,
  };
  WavError(Code code, const std::string &what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct WavData {
  std::vector<double> samples;
  std::uint32_t sample_rate = 0;
};

// Samples are scaled by 1/32768.
WavData ReadWav(const std::filesystem::path &path);
WavData ParseWav(std::span<const std::uint8_t> bytes);
// Samples are scaled by 32768, rounded and clamped to the int16 range.
void WriteWav(const std::filesystem::path &path, std::span<const double> samples,
              std::uint32_t sample_rate);
std::vector<std::uint8_t> EncodeWav(std::span<const double> samples,
                                    std::uint32_t sample_rate);

// Loads a .wav file as an utterance; ids are left empty.
Utterance LoadWav(const std::filesystem::path &path);

// Rounds each sample onto the 16-bit grid used by WriteWav.
double QuantizeToPcm16(double sample);

// ---------------------------------------------------------------------------
// Phone labels.

class PhnError : public Error {
 public:
  // line == 0 for whole-file errors such as I/O failures.
  PhnError(std::size_t line, const std::string &what)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::vector<PhoneSegment> ParsePhn(const std::filesystem::path &path);
std::vector<PhoneSegment> ParsePhnText(const std::string &text);
void WritePhn(const std::filesystem::path &path,
              std::span<const PhoneSegment> segments);

// TIMIT vowels, semivowels and nasals.
std::set<std::string> DefaultVoicedSet();
// The single label used for voiced runs by SynthCorpus.
std::set<std::string> SyntheticVoicedSet();
// One phone label per line; blank lines and '#' comments are ignored.
std::set<std::string> LoadVoicedSet(const std::filesystem::path &path);

// Maximal runs of adjacent voiced segments, merged; runs shorter than one
// maximum pitch period are dropped. Runs break on any gap between segments.
std::vector<VoicedRegion> ExtractVoicedRegions(
    const Utterance &utt, const std::set<std::string> &voiced_set);

// ---------------------------------------------------------------------------
// Synthetic corpus.

struct SyntheticSpeaker {
  std::string speaker_id;
  double pitch_hz = 0.0;
  double formant_hz[3] = {0.0, 0.0, 0.0};
  double bandwidth_hz[3] = {0.0, 0.0, 0.0};
};

struct SynthOptions {
  double sample_rate = 16000.0;
  double utterance_seconds = 2.0;
  // Per-cycle period perturbation (fraction of the nominal period).
  double jitter = 0.03;
  // Standard deviation of additive noise relative to the waveform peak.
  double noise_level = 1e-3;
};

struct SyntheticCorpus {
  std::vector<SyntheticSpeaker> speakers;
  std::vector<Utterance> utterances;  // grouped by speaker, in order
};

// Pure function of its arguments. Throws Error if n_speakers < 2.
SyntheticCorpus SynthCorpus(std::size_t n_speakers,
                            std::size_t utterances_per_speaker,
                            std::uint64_t seed,
                            const SynthOptions &options = {});

// ---------------------------------------------------------------------------
// On-disk corpus: <root>/<speaker>/<utterance>.wav with optional .phn and
// .gci (newline-separated ground-truth impulse positions) side files. Files
// with upper-case extensions (TIMIT style) are accepted too. Speaker
// directories may be nested (e.g. dialect-region folders).

void WriteCorpus(const std::filesystem::path &root,
                 std::span<const Utterance> utterances);
std::vector<Utterance> LoadCorpus(const std::filesystem::path &root);

}  // namespace pssid

#endif  // PSSID_CORPUS_H_
