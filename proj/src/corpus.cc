// src/corpus.cc
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
#include <fstream>
#include <map>
#include <sstream>

#include "pssid/corpus.h"

namespace pssid {

namespace fs = std::filesystem;

std::size_t MinPitchPeriod(double sample_rate) {
  return static_cast<std::size_t>(std::lround(sample_rate / 400.0));
}

std::size_t MaxPitchPeriod(double sample_rate) {
  return static_cast<std::size_t>(std::lround(sample_rate / 60.0));
}

std::vector<PhoneSegment> ParsePhnText(const std::string &text) {
  std::vector<PhoneSegment> segments;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long begin = 0, end = 0;
    std::string phone, extra;
    if (!(fields >> begin >> end >> phone) || (fields >> extra))
      throw PhnError(line_no, "line " + std::to_string(line_no) +
                                  ": expected \"begin end phone\"");
    if (begin < 0 || end <= begin)
      throw PhnError(line_no, "line " + std::to_string(line_no) +
                                  ": need 0 <= begin < end");
    PhoneSegment seg{static_cast<std::size_t>(begin),
                     static_cast<std::size_t>(end), phone};
    if (!segments.empty()) {
      const PhoneSegment &prev = segments.back();
      if (seg.begin < prev.begin)
        throw PhnError(line_no, "line " + std::to_string(line_no) +
                                    ": segments not sorted by begin");
      if (seg.begin < prev.end)
        throw PhnError(line_no, "line " + std::to_string(line_no) +
                                    ": segment overlaps previous one");
    }
    segments.push_back(std::move(seg));
  }
  return segments;
}

std::vector<PhoneSegment> ParsePhn(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw PhnError(0, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParsePhnText(buf.str());
  } catch (const PhnError &e) {
    throw PhnError(e.line(), path.string() + ": " + e.what());
  }
}

void WritePhn(const fs::path &path, std::span<const PhoneSegment> segments) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const PhoneSegment &s : segments)
    out << s.begin << ' ' << s.end << ' ' << s.phone << '\n';
}

std::set<std::string> DefaultVoicedSet() {
  return {
      // vowels
      "iy", "ih", "eh", "ae", "aa", "aw", "ay", "ah", "ao", "oy", "ow", "uh",
      "uw", "ux", "er", "ax", "ix", "axr", "ax-h",
      // semivowels
      "l", "r", "w", "y", "el",
      // nasals
      "m", "n", "ng", "em", "en", "eng", "nx"};
}

std::set<std::string> SyntheticVoicedSet() { return {"v"}; }

std::set<std::string> LoadVoicedSet(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open voiced-set file " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    // One label per line; lines starting with '#' are comments ("h#" is a
    // valid label).
    std::istringstream fields(line);
    std::string label;
    if ((fields >> label) && label[0] != '#') out.insert(label);
  }
  return out;
}

std::vector<VoicedRegion> ExtractVoicedRegions(
    const Utterance &utt, const std::set<std::string> &voiced_set) {
  if (!utt.segments)
    throw Error("utterance " + utt.utterance_id + " has no phone segments");
  const std::size_t min_len = MaxPitchPeriod(utt.sample_rate);
  std::vector<VoicedRegion> regions;

  std::size_t run_begin = 0, run_end = 0;
  bool in_run = false;
  auto flush = [&]() {
    if (in_run && run_end - run_begin >= min_len) {
      VoicedRegion r;
      r.samples.assign(utt.samples.begin() + run_begin,
                       utt.samples.begin() + run_end);
      r.source_offset = run_begin;
      r.sample_rate = utt.sample_rate;
      regions.push_back(std::move(r));
    }
    in_run = false;
  };

  for (const PhoneSegment &seg : *utt.segments) {
    const std::size_t end = std::min(seg.end, utt.samples.size());
    const bool voiced = voiced_set.contains(seg.phone) && seg.begin < end;
    if (!voiced) {
      flush();
      continue;
    }
    if (in_run && seg.begin == run_end) {
      run_end = end;
    } else {
      flush();
      in_run = true;
      run_begin = seg.begin;
      run_end = end;
    }
  }
  flush();
  return regions;
}

// ---------------------------------------------------------------------------

namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Returns the side file with the given extension, in either case.
std::optional<fs::path> SideFile(const fs::path &wav, const std::string &ext) {
  for (const std::string &e : {ext, [&] {
         std::string up = ext;
         std::transform(up.begin(), up.end(), up.begin(), ::toupper);
         return up;
       }()}) {
    fs::path p = wav;
    p.replace_extension(e);
    if (fs::exists(p)) return p;
  }
  return std::nullopt;
}

std::vector<std::size_t> ReadGci(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::size_t> out;
  long long v = 0;
  while (in >> v) {
    if (v < 0) throw Error(path.string() + ": negative GCI position");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace

void WriteCorpus(const fs::path &root, std::span<const Utterance> utterances) {
  for (const Utterance &utt : utterances) {
    if (utt.speaker_id.empty() || utt.utterance_id.empty())
      throw Error("WriteCorpus: utterance without speaker/utterance id");
    const fs::path dir = root / utt.speaker_id;
    fs::create_directories(dir);
    const fs::path base = dir / utt.utterance_id;
    WriteWav(fs::path(base).replace_extension(".wav"), utt.samples,
             static_cast<std::uint32_t>(utt.sample_rate));
    if (utt.segments)
      WritePhn(fs::path(base).replace_extension(".phn"), *utt.segments);
    if (utt.true_gci) {
      std::ofstream out(fs::path(base).replace_extension(".gci"));
      for (std::size_t p : *utt.true_gci) out << p << '\n';
    }
  }
}

std::vector<Utterance> LoadCorpus(const fs::path &root) {
  if (!fs::is_directory(root))
    throw Error("corpus root is not a directory: " + root.string());
  std::vector<fs::path> wavs;
  for (const auto &entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && Lower(entry.path().extension()) == ".wav")
      wavs.push_back(entry.path());
  }
  std::sort(wavs.begin(), wavs.end());

  std::vector<Utterance> out;
  out.reserve(wavs.size());
  for (const fs::path &wav : wavs) {
    Utterance utt = LoadWav(wav);
    utt.speaker_id = wav.parent_path().filename().string();
    utt.utterance_id = wav.stem().string();
    if (auto phn = SideFile(wav, ".phn")) {
      utt.segments = ParsePhn(*phn);
      // Label ends a few samples past the audio are clipped; a segment that
      // starts past the end means the files do not belong together.
      for (PhoneSegment &s : *utt.segments) {
        if (s.begin >= utt.samples.size())
          throw Error(phn->string() + ": segment begin " +
                      std::to_string(s.begin) + " beyond " +
                      std::to_string(utt.samples.size()) + " samples");
        s.end = std::min(s.end, utt.samples.size());
      }
    }
    if (auto gci = SideFile(wav, ".gci")) utt.true_gci = ReadGci(*gci);
    out.push_back(std::move(utt));
  }
  if (out.empty()) throw Error("no .wav files under " + root.string());
  return out;
}

}  // namespace pssid
