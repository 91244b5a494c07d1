// src/codebook_io.cc
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
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "pssid/vq.h"

namespace pssid {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[8] = {'P', 'S', 'S', 'I', 'D', 'C', 'B', '\0'};
constexpr const char *kManifestName = "manifest.json";

template <typename T>
void PutLe(std::vector<std::uint8_t> *out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out->push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : bytes_(b) {}

  template <typename T>
  T Get() {
    Need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      v |= static_cast<T>(static_cast<T>(bytes_[pos_ + i]) << (8 * i));
    pos_ += sizeof(T);
    return v;
  }

  std::span<const std::uint8_t> Take(std::size_t n) {
    Need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void Need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error("codebook file truncated");
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t KindCode(FeatureKind kind) {
  return kind == FeatureKind::kPsDct ? 0u : 1u;
}

std::string CodebookFileName(const Codebook &cb) {
  return cb.speaker_id + "." + std::string(FeatureKindName(cb.kind)) + ".cb";
}

}  // namespace

std::vector<std::uint8_t> EncodeCodebook(const Codebook &cb) {
  if (cb.centroids.size() != cb.k)
    throw Error("EncodeCodebook: centroid count does not match k");
  std::vector<std::uint8_t> out(kMagic, kMagic + sizeof(kMagic));
  PutLe<std::uint32_t>(&out, kCodebookVersion);
  PutLe<std::uint32_t>(&out, KindCode(cb.kind));
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(cb.k));
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(cb.dim));
  PutLe<std::uint64_t>(&out, cb.seed);
  PutLe<std::uint64_t>(&out, cb.train_vector_count);
  PutLe<std::uint32_t>(&out, static_cast<std::uint32_t>(cb.speaker_id.size()));
  out.insert(out.end(), cb.speaker_id.begin(), cb.speaker_id.end());
  for (const auto &c : cb.centroids) {
    if (c.size() != cb.dim)
      throw Error("EncodeCodebook: centroid dimension mismatch");
    for (double v : c) PutLe<std::uint64_t>(&out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

Codebook DecodeCodebook(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.Take(sizeof(kMagic));
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0)
    throw Error("not a codebook file (bad magic)");
  const auto version = r.Get<std::uint32_t>();
  if (version != kCodebookVersion)
    throw Error("unsupported codebook version " + std::to_string(version));
  Codebook cb;
  const auto kind = r.Get<std::uint32_t>();
  if (kind > 1) throw Error("codebook: unknown feature kind " + std::to_string(kind));
  cb.kind = kind == 0 ? FeatureKind::kPsDct : FeatureKind::kMfcc;
  cb.k = r.Get<std::uint32_t>();
  cb.dim = r.Get<std::uint32_t>();
  if (cb.k == 0 || cb.dim == 0) throw Error("codebook: k and dim must be >= 1");
  cb.seed = r.Get<std::uint64_t>();
  cb.train_vector_count = r.Get<std::uint64_t>();
  const auto id_len = r.Get<std::uint32_t>();
  const auto id = r.Take(id_len);
  cb.speaker_id.assign(id.begin(), id.end());
  cb.centroids.assign(cb.k, std::vector<double>(cb.dim));
  for (auto &c : cb.centroids)
    for (double &v : c) {
      v = std::bit_cast<double>(r.Get<std::uint64_t>());
      if (!std::isfinite(v)) throw Error("codebook: non-finite centroid value");
    }
  if (!r.done()) throw Error("codebook: trailing bytes");
  return cb;
}

void SaveCodebook(const fs::path &path, const Codebook &cb) {
  const auto bytes = EncodeCodebook(cb);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

Codebook LoadCodebook(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeCodebook(bytes);
  } catch (const Error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void SaveModel(const fs::path &dir, std::span<const Codebook> codebooks,
               ModelManifest manifest) {
  fs::create_directories(dir);
  manifest.entries.clear();
  for (const Codebook &cb : codebooks) {
    const std::string file = CodebookFileName(cb);
    SaveCodebook(dir / file, cb);
    manifest.entries.push_back({cb.speaker_id, cb.kind, cb.k, file});
  }
  nlohmann::json j;
  j["format"] = "pssid-model";
  j["version"] = 1;
  j["psdct_coeffs"] = manifest.psdct_coeffs;
  if (manifest.accuracy_psdct >= 0.0) j["accuracy_psdct"] = manifest.accuracy_psdct;
  if (manifest.accuracy_mfcc >= 0.0) j["accuracy_mfcc"] = manifest.accuracy_mfcc;
  j["codebooks"] = nlohmann::json::array();
  for (const auto &e : manifest.entries) {
    j["codebooks"].push_back({{"speaker", e.speaker_id},
                              {"kind", std::string(FeatureKindName(e.kind))},
                              {"k", e.k},
                              {"file", e.file}});
  }
  std::ofstream out(dir / kManifestName);
  if (!out) throw Error("cannot write manifest in " + dir.string());
  out << j.dump(2) << '\n';
}

ModelManifest LoadManifest(const fs::path &dir) {
  std::ifstream in(dir / kManifestName);
  if (!in) throw Error("no " + std::string(kManifestName) + " in " + dir.string());
  ModelManifest m;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "pssid-model")
      throw Error("not a pssid model manifest");
    m.psdct_coeffs = j.value("psdct_coeffs", std::size_t{15});
    m.accuracy_psdct = j.value("accuracy_psdct", -1.0);
    m.accuracy_mfcc = j.value("accuracy_mfcc", -1.0);
    for (const auto &e : j.at("codebooks")) {
      m.entries.push_back({e.at("speaker").get<std::string>(),
                           ParseFeatureKind(e.at("kind").get<std::string>()),
                           e.at("k").get<std::size_t>(),
                           e.at("file").get<std::string>()});
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error("malformed manifest in " + dir.string() + ": " + e.what());
  }
  return m;
}

std::vector<Codebook> LoadModel(const fs::path &dir, FeatureKind kind) {
  const ModelManifest m = LoadManifest(dir);
  std::vector<Codebook> out;
  for (const auto &e : m.entries) {
    if (e.kind != kind) continue;
    Codebook cb = LoadCodebook(dir / e.file);
    if (cb.speaker_id != e.speaker_id || cb.kind != e.kind || cb.k != e.k)
      throw Error("codebook " + e.file + " does not match its manifest entry");
    out.push_back(std::move(cb));
  }
  std::sort(out.begin(), out.end(), [](const Codebook &a, const Codebook &b) {
    return a.speaker_id < b.speaker_id;
  });
  return out;
}

}  // namespace pssid
