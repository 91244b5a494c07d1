// src/wav.cc
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
#include <cstring>
#include <fstream>
#include <iterator>

#include "pssid/corpus.h"

namespace pssid {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr double kPcmScale = 32768.0;

std::uint16_t ReadU16(std::span<const std::uint8_t> b, std::size_t pos) {
  return static_cast<std::uint16_t>(b[pos] | (b[pos + 1] << 8));
}

std::uint32_t ReadU32(std::span<const std::uint8_t> b, std::size_t pos) {
  return static_cast<std::uint32_t>(b[pos]) |
         (static_cast<std::uint32_t>(b[pos + 1]) << 8) |
         (static_cast<std::uint32_t>(b[pos + 2]) << 16) |
         (static_cast<std::uint32_t>(b[pos + 3]) << 24);
}

bool TagIs(std::span<const std::uint8_t> b, std::size_t pos, const char *tag) {
  return pos + 4 <= b.size() && std::memcmp(b.data() + pos, tag, 4) == 0;
}

void PutU16(std::vector<std::uint8_t> *out, std::uint16_t v) {
  out->push_back(static_cast<std::uint8_t>(v & 0xFF));
  out->push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t> *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out->push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void PutTag(std::vector<std::uint8_t> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

using Code = WavError::Code;

}  // namespace

WavData ParseWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 7 && std::memcmp(bytes.data(), "NIST_1A", 7) == 0)
    throw WavError(Code::kSphereContainer,
                   "NIST SPHERE file; convert to RIFF/WAVE first "
                   "(e.g. sph2pipe -f wav)");
  if (bytes.size() < 12 || !TagIs(bytes, 0, "RIFF") || !TagIs(bytes, 8, "WAVE"))
    throw WavError(Code::kMalformedHeader, "missing RIFF/WAVE header");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = ReadU32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      // Some writers leave a bogus size on the data chunk; clip it.
      if (!TagIs(bytes, pos, "data"))
        throw WavError(Code::kMalformedHeader, "chunk extends past end of file");
    }
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);

    if (TagIs(bytes, pos, "fmt ")) {
      if (avail < 16)
        throw WavError(Code::kMalformedHeader, "fmt chunk too short");
      format = ReadU16(bytes, body);
      channels = ReadU16(bytes, body + 2);
      rate = ReadU32(bytes, body + 4);
      bits = ReadU16(bytes, body + 14);
      if (format == kFormatExtensible) {
        if (avail < 26)
          throw WavError(Code::kMalformedHeader,
                         "extensible fmt chunk too short");
        format = ReadU16(bytes, body + 24);
      }
      have_fmt = true;
    } else if (TagIs(bytes, pos, "data")) {
      if (!have_fmt)
        throw WavError(Code::kMalformedHeader, "data chunk before fmt chunk");
      if (format != kFormatPcm)
        throw WavError(Code::kNotPcm, "unsupported encoding: format tag " +
                                          std::to_string(format) +
                                          " (only PCM is supported)");
      if (channels != 1)
        throw WavError(Code::kNotMono,
                       "unsupported channel count " + std::to_string(channels) +
                           " (only mono is supported)");
      if (bits != 16)
        throw WavError(Code::kBitDepth, "unsupported bit depth " +
                                            std::to_string(bits) +
                                            " (only 16-bit is supported)");
      if (rate == 0)
        throw WavError(Code::kMalformedHeader, "sample rate is zero");
      WavData out;
      out.sample_rate = rate;
      const std::size_t n = avail / 2;
      out.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto raw = static_cast<std::int16_t>(ReadU16(bytes, body + 2 * i));
        out.samples[i] = raw / kPcmScale;
      }
      return out;
    }
    pos = body + avail + (avail & 1);
  }
  throw WavError(Code::kMalformedHeader,
                 have_fmt ? "no data chunk" : "no fmt chunk");
}

WavData ReadWav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError(Code::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return ParseWav(bytes);
  } catch (const WavError &e) {
    throw WavError(e.code(), path.string() + ": " + e.what());
  }
}

double QuantizeToPcm16(double sample) {
  const double v = std::clamp(std::nearbyint(sample * kPcmScale), -32768.0,
                              32767.0);
  return v / kPcmScale;
}

std::vector<std::uint8_t> EncodeWav(std::span<const double> samples,
                                    std::uint32_t sample_rate) {
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_bytes);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, kFormatPcm);
  PutU16(&out, 1);
  PutU32(&out, sample_rate);
  PutU32(&out, sample_rate * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  PutTag(&out, "data");
  PutU32(&out, data_bytes);
  for (double s : samples) {
    const double v = std::clamp(std::nearbyint(s * kPcmScale), -32768.0,
                                32767.0);
    PutU16(&out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  return out;
}

void WriteWav(const std::filesystem::path &path, std::span<const double> samples,
              std::uint32_t sample_rate) {
  const std::vector<std::uint8_t> bytes = EncodeWav(samples, sample_rate);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WavError(Code::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw WavError(Code::kIo, "write failed: " + path.string());
}

Utterance LoadWav(const std::filesystem::path &path) {
  WavData wav = ReadWav(path);
  if (wav.samples.empty())
    throw WavError(Code::kMalformedHeader, path.string() + ": no samples");
  Utterance utt;
  utt.samples = std::move(wav.samples);
  utt.sample_rate = wav.sample_rate;
  return utt;
}

}  // namespace pssid
