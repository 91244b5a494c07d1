// include/pssid/eval.h
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

#ifndef PSSID_EVAL_H_
#define PSSID_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pssid/classify.h"
#include "pssid/corpus.h"
#include "pssid/pipeline.h"
#include "pssid/vq.h"

namespace pssid {

struct ExperimentConfig {
  std::filesystem::path corpus_root;
  std::size_t n_train = 6;
  std::size_t n_test = 2;
  // Utterances whose id starts with this (case-insensitive) go to the test
  // set first, e.g. TIMIT's SA1/SA2. Empty disables the rule; without matches
  // the last n_test utterances (sorted by id) are used.
  std::string test_pattern = "SA";
  std::vector<std::size_t> codebook_sizes = {16, 32, 64, 128};
  std::vector<std::size_t> coeff_counts = {10, 15, 20, 25, 30, 35, 40};
  std::size_t sweep_codebook_size = 32;
  std::uint64_t seed = kDefaultSeed;
  // Overrides features.voiced_set when set.
  std::optional<std::filesystem::path> voiced_set_path;
  FeatureOptions features;
  bool run_psdct = true;
  bool run_mfcc = true;
  FusionOptions fusion;
  KMeansOptions kmeans;
  // 0 = hardware concurrency.
  unsigned threads = 0;
};

// Throws Error naming the first speaker with too few utterances.
std::vector<SpeakerSplit> SplitSpeakers(std::span<const Utterance> utterances,
                                        const ExperimentConfig &config);

struct SystemAccuracy {
  std::string system;  // "psdct", "mfcc" or "fused"
  std::size_t codebook_size = 0;
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy = 0.0;
  double alpha = -1.0;  // fused only
};

struct Trial {
  std::size_t codebook_size = 0;
  std::string speaker_id;  // ground truth
  std::optional<Identification> psdct;
  std::optional<Identification> mfcc;
  std::optional<FusedIdentification> fused;
};

struct EvalReport {
  std::vector<std::string> speakers;
  std::vector<SystemAccuracy> accuracies;
  std::vector<Trial> trials;
  std::map<std::string, std::size_t> train_vectors_psdct;
  std::map<std::string, std::size_t> train_vectors_mfcc;

  // Throws Error when the (system, size) pair was not run.
  const SystemAccuracy &Find(const std::string &system,
                             std::size_t codebook_size) const;
};

// One pooled decision per speaker per system and codebook size. Fusion uses
// the per-system accuracies measured in this same run.
EvalReport RunExperiment(std::span<const Utterance> utterances,
                         const ExperimentConfig &config);
EvalReport RunExperiment(const ExperimentConfig &config);

struct SweepRow {
  std::size_t num_coeffs = 0;
  double mec_with_dc = 0.0;
  double mec_without_dc = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy = 0.0;
};

struct SweepReport {
  std::size_t codebook_size = 0;
  std::size_t train_cycles = 0;
  std::vector<SweepRow> rows;
};

// PS-DCT accuracy and MEC (over all training cycles) for each coefficient
// count, at config.sweep_codebook_size.
SweepReport SweepCoefficients(std::span<const Utterance> utterances,
                              const ExperimentConfig &config);
SweepReport SweepCoefficients(const ExperimentConfig &config);

// Resolves the voiced set (explicit path, then <corpus>/voiced.txt, then the
// TIMIT default) and loads the corpus.
std::vector<Utterance> LoadExperimentCorpus(ExperimentConfig *config);

// Markdown tables with the published TIMIT figures alongside, and CSV dumps.
void WriteReportMarkdown(std::ostream &out, const EvalReport &report);
void WriteSweepMarkdown(std::ostream &out, const SweepReport &sweep);
void WriteAccuracyCsv(std::ostream &out, const EvalReport &report);
void WriteTrialsCsv(std::ostream &out, const EvalReport &report);
void WriteSweepCsv(std::ostream &out, const SweepReport &sweep);

}  // namespace pssid

#endif  // PSSID_EVAL_H_
