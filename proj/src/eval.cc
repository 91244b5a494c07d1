// src/eval.cc
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

#include "pssid/eval.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace pssid {

namespace fs = std::filesystem;

namespace {

// Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
// results do not depend on scheduling. The first exception is rethrown.
template <typename Fn>
void ParallelFor(std::size_t n, unsigned threads, Fn fn) {
  unsigned workers = threads ? threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

bool StartsWithNoCase(const std::string &s, const std::string &prefix) {
  if (prefix.empty() || s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  }
  return true;
}

void ValidateConfig(const ExperimentConfig &c) {
  if (c.n_train == 0 || c.n_test == 0)
    throw Error("experiment: train and test counts must be >= 1");
  if (c.codebook_sizes.empty())
    throw Error("experiment: no codebook sizes given");
  for (std::size_t k : c.codebook_sizes)
    if (k == 0) throw Error("experiment: codebook size must be >= 1");
  if (c.coeff_counts.empty())
    throw Error("experiment: no coefficient counts given");
  for (std::size_t k : c.coeff_counts)
    if (k == 0) throw Error("experiment: coefficient count must be >= 1");
  if (!c.run_psdct && !c.run_mfcc)
    throw Error("experiment: no feature kind selected");
}

std::vector<FeatureVector> Pool(
    const std::vector<const Utterance *> &utts,
    const std::map<const Utterance *, std::vector<FeatureVector>> &features) {
  std::vector<FeatureVector> out;
  for (const Utterance *u : utts) {
    const auto &f = features.at(u);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

struct SpeakerFeatures {
  std::vector<FeatureVector> train;
  std::vector<FeatureVector> test;
};

std::vector<SpeakerFeatures> ComputeFeatures(
    const std::vector<SpeakerSplit> &splits, FeatureKind kind,
    const ExperimentConfig &config) {
  std::vector<const Utterance *> all;
  for (const SpeakerSplit &s : splits) {
    all.insert(all.end(), s.train.begin(), s.train.end());
    all.insert(all.end(), s.test.begin(), s.test.end());
  }
  std::vector<std::vector<FeatureVector>> per_utt(all.size());
  ParallelFor(all.size(), config.threads, [&](std::size_t i) {
    per_utt[i] = ExtractFeatures(*all[i], kind, config.features);
  });
  std::map<const Utterance *, std::vector<FeatureVector>> by_utt;
  for (std::size_t i = 0; i < all.size(); ++i)
    by_utt[all[i]] = std::move(per_utt[i]);

  std::vector<SpeakerFeatures> out(splits.size());
  for (std::size_t s = 0; s < splits.size(); ++s) {
    out[s].train = Pool(splits[s].train, by_utt);
    out[s].test = Pool(splits[s].test, by_utt);
    if (out[s].train.empty())
      throw Error("speaker " + splits[s].speaker_id + ": no " +
                  std::string(FeatureKindName(kind)) +
                  " training vectors (no usable voiced regions?)");
    if (out[s].test.empty())
      throw Error("speaker " + splits[s].speaker_id + ": no " +
                  std::string(FeatureKindName(kind)) + " test vectors");
  }
  return out;
}

std::vector<Codebook> TrainAll(const std::vector<SpeakerSplit> &splits,
                               const std::vector<SpeakerFeatures> &features,
                               std::size_t k, const ExperimentConfig &config) {
  std::vector<Codebook> books(splits.size());
  ParallelFor(splits.size(), config.threads, [&](std::size_t s) {
    try {
      books[s] = TrainCodebook(features[s].train, k, config.seed, config.kmeans);
    } catch (const Error &e) {
      throw Error("speaker " + splits[s].speaker_id + ": " + e.what());
    }
    books[s].speaker_id = splits[s].speaker_id;
  });
  return books;
}

std::vector<Identification> IdentifyAll(
    const std::vector<SpeakerFeatures> &features,
    const std::vector<Codebook> &books, const ExperimentConfig &config) {
  std::vector<Identification> out(features.size());
  ParallelFor(features.size(), config.threads, [&](std::size_t s) {
    out[s] = Identify(features[s].test, books);
  });
  return out;
}

double Ratio(std::size_t correct, std::size_t total) {
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

}  // namespace

std::vector<SpeakerSplit> SplitSpeakers(std::span<const Utterance> utterances,
                                        const ExperimentConfig &config) {
  std::map<std::string, std::vector<const Utterance *>> by_speaker;
  for (const Utterance &u : utterances) by_speaker[u.speaker_id].push_back(&u);

  std::vector<SpeakerSplit> splits;
  for (auto &[speaker, utts] : by_speaker) {
    std::sort(utts.begin(), utts.end(),
              [](const Utterance *a, const Utterance *b) {
                return a->utterance_id < b->utterance_id;
              });
    if (utts.size() < config.n_train + config.n_test)
      throw Error("speaker " + speaker + " has " + std::to_string(utts.size()) +
                  " utterances; need " +
                  std::to_string(config.n_train + config.n_test));
    SpeakerSplit split;
    split.speaker_id = speaker;
    std::vector<const Utterance *> rest;
    for (const Utterance *u : utts) {
      if (split.test.size() < config.n_test &&
          StartsWithNoCase(u->utterance_id, config.test_pattern))
        split.test.push_back(u);
      else
        rest.push_back(u);
    }
    while (split.test.size() < config.n_test) {
      split.test.push_back(rest.back());
      rest.pop_back();
    }
    std::sort(split.test.begin(), split.test.end(),
              [](const Utterance *a, const Utterance *b) {
                return a->utterance_id < b->utterance_id;
              });
    split.train.assign(rest.begin(), rest.begin() + config.n_train);

    std::set<const Utterance *> train_set(split.train.begin(), split.train.end());
    for (const Utterance *u : split.test)
      if (train_set.contains(u))
        throw std::logic_error("train/test split overlaps for " + speaker);
    splits.push_back(std::move(split));
  }
  if (splits.empty()) throw Error("corpus has no speakers");
  return splits;
}

const SystemAccuracy &EvalReport::Find(const std::string &system,
                                       std::size_t codebook_size) const {
  for (const SystemAccuracy &a : accuracies)
    if (a.system == system && a.codebook_size == codebook_size) return a;
  throw Error("no result for " + system + " at codebook size " +
              std::to_string(codebook_size));
}

EvalReport RunExperiment(std::span<const Utterance> utterances,
                         const ExperimentConfig &config) {
  ValidateConfig(config);
  const std::vector<SpeakerSplit> splits = SplitSpeakers(utterances, config);

  EvalReport report;
  for (const SpeakerSplit &s : splits) report.speakers.push_back(s.speaker_id);

  std::vector<SpeakerFeatures> dct_features, mfcc_features;
  if (config.run_psdct) {
    dct_features = ComputeFeatures(splits, FeatureKind::kPsDct, config);
    for (std::size_t s = 0; s < splits.size(); ++s)
      report.train_vectors_psdct[splits[s].speaker_id] =
          dct_features[s].train.size();
  }
  if (config.run_mfcc) {
    mfcc_features = ComputeFeatures(splits, FeatureKind::kMfcc, config);
    for (std::size_t s = 0; s < splits.size(); ++s)
      report.train_vectors_mfcc[splits[s].speaker_id] =
          mfcc_features[s].train.size();
  }

  for (std::size_t k : config.codebook_sizes) {
    std::vector<Identification> dct_ids, mfcc_ids;
    if (config.run_psdct)
      dct_ids = IdentifyAll(dct_features,
                            TrainAll(splits, dct_features, k, config), config);
    if (config.run_mfcc)
      mfcc_ids = IdentifyAll(mfcc_features,
                             TrainAll(splits, mfcc_features, k, config), config);

    std::size_t dct_ok = 0, mfcc_ok = 0;
    for (std::size_t s = 0; s < splits.size(); ++s) {
      if (config.run_psdct && dct_ids[s].predicted == splits[s].speaker_id)
        ++dct_ok;
      if (config.run_mfcc && mfcc_ids[s].predicted == splits[s].speaker_id)
        ++mfcc_ok;
    }
    const std::size_t n = splits.size();
    if (config.run_psdct)
      report.accuracies.push_back({"psdct", k, dct_ok, n, Ratio(dct_ok, n)});
    if (config.run_mfcc)
      report.accuracies.push_back({"mfcc", k, mfcc_ok, n, Ratio(mfcc_ok, n)});

    std::optional<FusionWeights> weights;
    if (config.run_psdct && config.run_mfcc) {
      // Both systems at 0% leave alpha undefined; fall back to equal weights.
      weights = (dct_ok + mfcc_ok) ? FusionWeights(Ratio(dct_ok, n),
                                                   Ratio(mfcc_ok, n))
                                   : FusionWeights(1.0, 1.0);
    }
    std::size_t fused_ok = 0;
    for (std::size_t s = 0; s < splits.size(); ++s) {
      Trial t;
      t.codebook_size = k;
      t.speaker_id = splits[s].speaker_id;
      if (config.run_psdct) t.psdct = dct_ids[s];
      if (config.run_mfcc) t.mfcc = mfcc_ids[s];
      if (weights) {
        t.fused = Fuse(dct_ids[s].ranking, mfcc_ids[s].ranking, *weights,
                       config.fusion);
        if (t.fused->predicted == t.speaker_id) ++fused_ok;
      }
      report.trials.push_back(std::move(t));
    }
    if (weights) {
      SystemAccuracy fa{"fused", k, fused_ok, n, Ratio(fused_ok, n)};
      fa.alpha = weights->alpha();
      report.accuracies.push_back(fa);
    }
  }

  // Accuracies must agree with a recount of the per-trial rows.
  for (const SystemAccuracy &a : report.accuracies) {
    std::size_t correct = 0, total = 0;
    for (const Trial &t : report.trials) {
      if (t.codebook_size != a.codebook_size) continue;
      const std::string *pred = nullptr;
      if (a.system == "psdct" && t.psdct) pred = &t.psdct->predicted;
      if (a.system == "mfcc" && t.mfcc) pred = &t.mfcc->predicted;
      if (a.system == "fused" && t.fused) pred = &t.fused->predicted;
      if (!pred) continue;
      ++total;
      if (*pred == t.speaker_id) ++correct;
    }
    if (correct != a.correct || total != a.total)
      throw std::logic_error("report accuracy disagrees with trial rows");
  }
  return report;
}

std::vector<Utterance> LoadExperimentCorpus(ExperimentConfig *config) {
  if (config->corpus_root.empty()) throw Error("experiment: no corpus given");
  if (config->voiced_set_path) {
    config->features.voiced_set = LoadVoicedSet(*config->voiced_set_path);
  } else if (fs::exists(config->corpus_root / "voiced.txt")) {
    config->features.voiced_set =
        LoadVoicedSet(config->corpus_root / "voiced.txt");
  }
  if (config->features.voiced_set.empty())
    throw Error("experiment: voiced set is empty");
  return LoadCorpus(config->corpus_root);
}

EvalReport RunExperiment(const ExperimentConfig &config) {
  ExperimentConfig c = config;
  const std::vector<Utterance> utts = LoadExperimentCorpus(&c);
  return RunExperiment(utts, c);
}

SweepReport SweepCoefficients(std::span<const Utterance> utterances,
                              const ExperimentConfig &config) {
  ValidateConfig(config);
  const std::vector<SpeakerSplit> splits = SplitSpeakers(utterances, config);

  std::vector<const Utterance *> all;
  for (const SpeakerSplit &s : splits) {
    all.insert(all.end(), s.train.begin(), s.train.end());
    all.insert(all.end(), s.test.begin(), s.test.end());
  }
  std::vector<std::vector<PitchCycle>> per_utt(all.size());
  ParallelFor(all.size(), config.threads, [&](std::size_t i) {
    per_utt[i] = ExtractCycles(*all[i], config.features);
  });
  std::map<const Utterance *, const std::vector<PitchCycle> *> cycles_of;
  for (std::size_t i = 0; i < all.size(); ++i) cycles_of[all[i]] = &per_utt[i];

  SweepReport sweep;
  sweep.codebook_size = config.sweep_codebook_size;

  std::vector<PitchCycle> train_cycles;
  for (const SpeakerSplit &s : splits)
    for (const Utterance *u : s.train)
      train_cycles.insert(train_cycles.end(), cycles_of[u]->begin(),
                          cycles_of[u]->end());
  if (train_cycles.empty()) throw Error("sweep: no training cycles");
  sweep.train_cycles = train_cycles.size();
  const std::vector<MecResult> mec = MecSweep(train_cycles, config.coeff_counts);

  for (std::size_t i = 0; i < config.coeff_counts.size(); ++i) {
    const std::size_t num_coeffs = config.coeff_counts[i];
    std::vector<SpeakerFeatures> feats(splits.size());
    for (std::size_t s = 0; s < splits.size(); ++s) {
      for (const Utterance *u : splits[s].train) {
        auto f = PsDctFromCycles(*cycles_of[u], num_coeffs);
        feats[s].train.insert(feats[s].train.end(), f.begin(), f.end());
      }
      for (const Utterance *u : splits[s].test) {
        auto f = PsDctFromCycles(*cycles_of[u], num_coeffs);
        feats[s].test.insert(feats[s].test.end(), f.begin(), f.end());
      }
      if (feats[s].train.empty() || feats[s].test.empty())
        throw Error("sweep: speaker " + splits[s].speaker_id +
                    " has no cycles longer than " + std::to_string(num_coeffs));
    }
    const auto books =
        TrainAll(splits, feats, config.sweep_codebook_size, config);
    const auto ids = IdentifyAll(feats, books, config);
    SweepRow row;
    row.num_coeffs = num_coeffs;
    row.mec_with_dc = mec[i].with_dc;
    row.mec_without_dc = mec[i].without_dc;
    row.total = splits.size();
    for (std::size_t s = 0; s < splits.size(); ++s)
      if (ids[s].predicted == splits[s].speaker_id) ++row.correct;
    row.accuracy = Ratio(row.correct, row.total);
    sweep.rows.push_back(row);
  }
  return sweep;
}

SweepReport SweepCoefficients(const ExperimentConfig &config) {
  ExperimentConfig c = config;
  const std::vector<Utterance> utts = LoadExperimentCorpus(&c);
  return SweepCoefficients(utts, c);
}

}  // namespace pssid
