// tools/pssid.cc
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

// Command-line front end: synth, extract, train, identify, evaluate, sweep.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pssid/classify.h"
#include "pssid/corpus.h"
#include "pssid/eval.h"
#include "pssid/pipeline.h"
#include "pssid/vq.h"

namespace fs = std::filesystem;
using namespace pssid;

namespace {

struct CommonFlags {
  std::string corpus;
  std::string model_dir;
  std::vector<std::size_t> codebook_sizes;
  std::size_t coeffs = kDefaultPsDctCoeffs;
  std::vector<std::size_t> sweep_coeffs;
  std::uint64_t seed = kDefaultSeed;
  std::string voiced_set;
  std::string kind = "fused";
  std::string report_out;
  unsigned threads = 0;
};

ExperimentConfig MakeConfig(const CommonFlags &f) {
  ExperimentConfig c;
  c.corpus_root = f.corpus;
  c.seed = f.seed;
  c.threads = f.threads;
  c.features.psdct_coeffs = f.coeffs;
  if (!f.voiced_set.empty()) c.voiced_set_path = fs::path(f.voiced_set);
  if (!f.codebook_sizes.empty()) c.codebook_sizes = f.codebook_sizes;
  c.run_psdct = f.kind == "psdct" || f.kind == "fused";
  c.run_mfcc = f.kind == "mfcc" || f.kind == "fused";
  return c;
}

std::vector<FeatureKind> KindsOf(const std::string &kind) {
  if (kind == "psdct") return {FeatureKind::kPsDct};
  if (kind == "mfcc") return {FeatureKind::kMfcc};
  return {FeatureKind::kPsDct, FeatureKind::kMfcc};
}

std::ofstream OpenOut(const fs::path &path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

int RunSynth(const CommonFlags &f, std::size_t speakers,
             std::size_t utterances, double seconds) {
  SynthOptions opt;
  opt.utterance_seconds = seconds;
  const SyntheticCorpus corpus = SynthCorpus(speakers, utterances, f.seed, opt);
  WriteCorpus(f.corpus, corpus.utterances);
  std::ofstream voiced(fs::path(f.corpus) / "voiced.txt");
  for (const std::string &p : SyntheticVoicedSet()) voiced << p << '\n';
  std::ofstream info(fs::path(f.corpus) / "speakers.csv");
  info << "speaker,pitch_hz,f1_hz,f2_hz,f3_hz\n";
  for (const SyntheticSpeaker &s : corpus.speakers)
    info << s.speaker_id << ',' << s.pitch_hz << ',' << s.formant_hz[0] << ','
         << s.formant_hz[1] << ',' << s.formant_hz[2] << '\n';
  std::cout << "wrote " << corpus.utterances.size() << " utterances for "
            << speakers << " speakers to " << f.corpus << '\n';
  return 0;
}

int RunExtract(const CommonFlags &f, const std::string &gci_dump) {
  ExperimentConfig c = MakeConfig(f);
  const std::vector<Utterance> utts = LoadExperimentCorpus(&c);
  const FeatureKind kind =
      f.kind == "mfcc" ? FeatureKind::kMfcc : FeatureKind::kPsDct;
  std::optional<std::ofstream> dump;
  if (!gci_dump.empty()) {
    dump = OpenOut(gci_dump);
    *dump << "utterance,";
    WriteGciDumpHeader(*dump);
  }
  std::ostream *out = &std::cout;
  std::optional<std::ofstream> file;
  if (!f.report_out.empty()) {
    file = OpenOut(f.report_out);
    out = &*file;
  }
  const std::size_t dim =
      kind == FeatureKind::kPsDct ? f.coeffs : c.features.mfcc.num_ceps;
  WriteFeatureCsvHeader(*out, dim);
  for (const Utterance &u : utts) {
    std::vector<FeatureVector> feats;
    if (kind == FeatureKind::kPsDct) {
      std::ostringstream rows;
      const auto cycles =
          ExtractCycles(u, c.features, nullptr, dump ? &rows : nullptr);
      if (dump) {
        std::istringstream in(rows.str());
        for (std::string line; std::getline(in, line);)
          *dump << u.speaker_id << '/' << u.utterance_id << ',' << line << '\n';
      }
      feats = PsDctFromCycles(cycles, f.coeffs);
    } else {
      feats = ExtractMfcc(u, c.features);
    }
    WriteFeatureCsv(*out, u, feats);
  }
  return 0;
}

int RunTrain(const CommonFlags &f) {
  if (f.model_dir.empty()) throw Error("train: --model-dir is required");
  ExperimentConfig c = MakeConfig(f);
  const std::vector<Utterance> utts = LoadExperimentCorpus(&c);
  const std::vector<SpeakerSplit> splits = SplitSpeakers(utts, c);
  const std::size_t k = f.codebook_sizes.empty() ? 32 : f.codebook_sizes[0];
  std::vector<Codebook> books;
  for (FeatureKind kind : KindsOf(f.kind)) {
    for (const SpeakerSplit &s : splits) {
      std::vector<FeatureVector> train;
      for (const Utterance *u : s.train) {
        auto v = ExtractFeatures(*u, kind, c.features);
        train.insert(train.end(), v.begin(), v.end());
      }
      Codebook cb = TrainCodebook(train, k, f.seed, c.kmeans);
      cb.speaker_id = s.speaker_id;
      std::cout << s.speaker_id << ' ' << FeatureKindName(kind) << ": "
                << train.size() << " vectors, distortion "
                << Distortion(train, cb) << '\n';
      books.push_back(std::move(cb));
    }
  }
  ModelManifest manifest;
  manifest.psdct_coeffs = f.coeffs;
  SaveModel(f.model_dir, books, manifest);
  std::cout << "saved " << books.size() << " codebooks to " << f.model_dir
            << '\n';
  return 0;
}

int RunIdentify(const CommonFlags &f, double acc_psdct, double acc_mfcc) {
  if (f.model_dir.empty()) throw Error("identify: --model-dir is required");
  ExperimentConfig c = MakeConfig(f);
  const ModelManifest manifest = LoadManifest(f.model_dir);
  c.features.psdct_coeffs = manifest.psdct_coeffs;
  const std::vector<Utterance> utts = LoadExperimentCorpus(&c);
  const std::vector<SpeakerSplit> splits = SplitSpeakers(utts, c);

  std::optional<FusionWeights> weights;
  if (f.kind == "fused") {
    if (acc_psdct < 0.0) acc_psdct = manifest.accuracy_psdct;
    if (acc_mfcc < 0.0) acc_mfcc = manifest.accuracy_mfcc;
    if (acc_psdct < 0.0 || acc_mfcc < 0.0)
      throw Error("identify --kind fused needs --acc-psdct and --acc-mfcc "
                  "(accuracies from a separate evaluation)");
    weights = FusionWeights(acc_psdct, acc_mfcc);
  }
  std::map<FeatureKind, std::vector<Codebook>> books;
  for (FeatureKind kind : KindsOf(f.kind)) {
    books[kind] = LoadModel(f.model_dir, kind);
    if (books[kind].empty())
      throw Error("model has no " + std::string(FeatureKindName(kind)) +
                  " codebooks");
  }

  std::optional<std::ofstream> report;
  if (!f.report_out.empty()) {
    report = OpenOut(f.report_out);
    if (weights)
      WriteFusedHeader(*report);
    else
      WriteScoreHeader(*report);
  }
  std::size_t correct = 0;
  for (const SpeakerSplit &s : splits) {
    std::map<FeatureKind, Identification> ids;
    for (auto &[kind, cbs] : books) {
      std::vector<FeatureVector> test;
      for (const Utterance *u : s.test) {
        auto v = ExtractFeatures(*u, kind, c.features);
        test.insert(test.end(), v.begin(), v.end());
      }
      ids[kind] = Identify(test, cbs);
    }
    std::string predicted;
    if (weights) {
      const auto fused = Fuse(ids[FeatureKind::kPsDct].ranking,
                              ids[FeatureKind::kMfcc].ranking, *weights,
                              c.fusion);
      predicted = fused.predicted;
      if (report) WriteFused(*report, s.speaker_id, fused);
    } else {
      const Identification &id = ids.begin()->second;
      predicted = id.predicted;
      if (report) WriteScores(*report, s.speaker_id, id);
    }
    if (predicted == s.speaker_id) ++correct;
    std::cout << s.speaker_id << " -> " << predicted << '\n';
  }
  std::cout << "accuracy " << correct << '/' << splits.size() << '\n';
  return 0;
}

int RunEvaluate(const CommonFlags &f) {
  const ExperimentConfig c = MakeConfig(f);
  const EvalReport report = RunExperiment(c);
  WriteReportMarkdown(std::cout, report);
  if (!f.report_out.empty()) {
    const fs::path dir = f.report_out;
    fs::create_directories(dir);
    std::ofstream md(dir / "report.md");
    WriteReportMarkdown(md, report);
    std::ofstream acc(dir / "accuracy.csv");
    WriteAccuracyCsv(acc, report);
    std::ofstream trials(dir / "trials.csv");
    WriteTrialsCsv(trials, report);
  }
  return 0;
}

int RunSweep(const CommonFlags &f) {
  ExperimentConfig c = MakeConfig(f);
  if (!f.codebook_sizes.empty()) c.sweep_codebook_size = f.codebook_sizes[0];
  if (!f.sweep_coeffs.empty()) c.coeff_counts = f.sweep_coeffs;
  const SweepReport sweep = SweepCoefficients(c);
  WriteSweepMarkdown(std::cout, sweep);
  if (!f.report_out.empty()) {
    const fs::path dir = f.report_out;
    fs::create_directories(dir);
    std::ofstream md(dir / "sweep.md");
    WriteSweepMarkdown(md, sweep);
    std::ofstream csv(dir / "sweep.csv");
    WriteSweepCsv(csv, sweep);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Pitch-synchronous DCT speaker identification toolkit"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--corpus", flags.corpus, "Corpus root directory")
        ->required();
    cmd->add_option("--seed", flags.seed, "Random seed");
    cmd->add_option("--voiced-set", flags.voiced_set,
                    "File with one voiced phone label per line");
    cmd->add_option("--threads", flags.threads, "Worker threads (0 = auto)");
  };
  auto add_features = [&](CLI::App *cmd) {
    cmd->add_option("--coeffs", flags.coeffs, "PS-DCT coefficients kept");
    cmd->add_option("--kind", flags.kind, "Feature system")
        ->check(CLI::IsMember({"psdct", "mfcc", "fused"}));
  };

  std::size_t n_speakers = 12, n_utterances = 8;
  double seconds = 2.0;
  auto *synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  add_common(synth);
  synth->add_option("--speakers", n_speakers, "Number of speakers");
  synth->add_option("--utterances", n_utterances, "Utterances per speaker");
  synth->add_option("--seconds", seconds, "Utterance duration");

  std::string gci_dump;
  auto *extract = app.add_subcommand("extract", "Write features as CSV");
  add_common(extract);
  add_features(extract);
  extract->add_option("--report-out", flags.report_out, "Feature CSV path");
  extract->add_option("--gci-dump", gci_dump, "Epoch/peak CSV path");

  auto *train = app.add_subcommand("train", "Train codebooks on the train split");
  add_common(train);
  add_features(train);
  train->add_option("--model-dir", flags.model_dir, "Output model directory");
  train->add_option("--codebook-size", flags.codebook_sizes, "Codebook size");

  double acc_psdct = -1.0, acc_mfcc = -1.0;
  auto *identify =
      app.add_subcommand("identify", "Identify the test split against a model");
  add_common(identify);
  add_features(identify);
  identify->add_option("--model-dir", flags.model_dir, "Model directory");
  identify->add_option("--report-out", flags.report_out, "Score CSV path");
  identify->add_option("--acc-psdct", acc_psdct, "PS-DCT accuracy for fusion");
  identify->add_option("--acc-mfcc", acc_mfcc, "MFCC accuracy for fusion");

  auto *evaluate = app.add_subcommand("evaluate", "Full train/test evaluation");
  add_common(evaluate);
  add_features(evaluate);
  evaluate->add_option("--codebook-size", flags.codebook_sizes,
                       "Codebook sizes (default 16 32 64 128)");
  evaluate->add_option("--report-out", flags.report_out, "Report directory");

  auto *sweep = app.add_subcommand("sweep", "PS-DCT coefficient-count sweep");
  add_common(sweep);
  sweep->add_option("--codebook-size", flags.codebook_sizes,
                    "Codebook size (default 32)");
  sweep->add_option("--coeffs", flags.sweep_coeffs,
                    "Coefficient counts (default 10 15 20 25 30 35 40)");
  sweep->add_option("--report-out", flags.report_out, "Report directory");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*synth) return RunSynth(flags, n_speakers, n_utterances, seconds);
    if (*extract) return RunExtract(flags, gci_dump);
    if (*train) return RunTrain(flags);
    if (*identify) return RunIdentify(flags, acc_psdct, acc_mfcc);
    if (*evaluate) return RunEvaluate(flags);
    if (*sweep) return RunSweep(flags);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
