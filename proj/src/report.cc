// src/report.cc
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
#include <cstdio>
#include <optional>
#include <ostream>

#include "pssid/eval.h"

namespace pssid {

namespace {

// Published identification accuracies (%) on a 30-speaker TIMIT subset,
// printed next to our numbers for comparison.
struct CodebookReference {
  std::size_t size;
  double psdct, mfcc, fused;
};
constexpr CodebookReference kCodebookReference[] = {
    {16, 90.0, 90.0, 100.0},
    {32, 96.7, 96.7, 100.0},
    {64, 96.7, 100.0, 100.0},
    {128, 96.7, 100.0, 100.0},
};

struct CoeffReference {
  std::size_t num_coeffs;
  double mec, accuracy;
};
constexpr CoeffReference kCoeffReference[] = {
    {10, 81.7, 93.3}, {15, 90.7, 96.7}, {20, 93.4, 96.7}, {25, 94.5, 96.7},
    {30, 95.6, 96.7}, {35, 96.3, 96.7}, {40, 96.9, 96.7},
};

std::string Percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * fraction);
  return buf;
}

std::string Ref(std::optional<double> v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", *v);
  return buf;
}

std::string Cell(const EvalReport &r, const std::string &system,
                 std::size_t k) {
  for (const SystemAccuracy &a : r.accuracies) {
    if (a.system == system && a.codebook_size == k)
      return Percent(a.accuracy) + " (" + std::to_string(a.correct) + "/" +
             std::to_string(a.total) + ")";
  }
  return "-";
}

}  // namespace

void WriteReportMarkdown(std::ostream &out, const EvalReport &report) {
  out << "# Speaker identification report\n\n";
  out << "Speakers: " << report.speakers.size() << "\n\n";
  out << "## Accuracy (%) by codebook size\n\n";
  out << "| Codebook size | PS-DCT | MFCC | Combined | alpha | "
         "ref PS-DCT | ref MFCC | ref Combined |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  std::vector<std::size_t> sizes;
  for (const SystemAccuracy &a : report.accuracies)
    if (std::find(sizes.begin(), sizes.end(), a.codebook_size) == sizes.end())
      sizes.push_back(a.codebook_size);
  for (std::size_t k : sizes) {
    std::string alpha = "-";
    for (const SystemAccuracy &a : report.accuracies)
      if (a.system == "fused" && a.codebook_size == k) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", a.alpha);
        alpha = buf;
      }
    std::optional<double> rd, rm, rf;
    for (const auto &ref : kCodebookReference)
      if (ref.size == k) rd = ref.psdct, rm = ref.mfcc, rf = ref.fused;
    out << "| " << k << " | " << Cell(report, "psdct", k) << " | "
        << Cell(report, "mfcc", k) << " | " << Cell(report, "fused", k)
        << " | " << alpha << " | " << Ref(rd) << " | " << Ref(rm) << " | "
        << Ref(rf) << " |\n";
  }
  out << "\nref columns: published figures for a 30-speaker TIMIT subset "
         "(6 train / 2 test utterances); only comparable on that data.\n";
  out << "Fusion weights come from the accuracies in this same run.\n";

  if (!report.train_vectors_psdct.empty() || !report.train_vectors_mfcc.empty()) {
    out << "\n## Training vectors per speaker\n\n";
    out << "| Speaker | PS-DCT | MFCC |\n|---|---|---|\n";
    for (const std::string &s : report.speakers) {
      auto get = [&](const std::map<std::string, std::size_t> &m) {
        auto it = m.find(s);
        return it == m.end() ? std::string("-") : std::to_string(it->second);
      };
      out << "| " << s << " | " << get(report.train_vectors_psdct) << " | "
          << get(report.train_vectors_mfcc) << " |\n";
    }
  }

  std::vector<const Trial *> misses;
  for (const Trial &t : report.trials) {
    if ((t.psdct && t.psdct->predicted != t.speaker_id) ||
        (t.mfcc && t.mfcc->predicted != t.speaker_id) ||
        (t.fused && t.fused->predicted != t.speaker_id))
      misses.push_back(&t);
  }
  if (!misses.empty()) {
    out << "\n## Misidentifications\n\n";
    out << "| Codebook size | Speaker | PS-DCT | MFCC | Combined |\n"
           "|---|---|---|---|---|\n";
    for (const Trial *t : misses) {
      out << "| " << t->codebook_size << " | " << t->speaker_id << " | "
          << (t->psdct ? t->psdct->predicted : "-") << " | "
          << (t->mfcc ? t->mfcc->predicted : "-") << " | "
          << (t->fused ? t->fused->predicted : "-") << " |\n";
    }
  }
}

void WriteSweepMarkdown(std::ostream &out, const SweepReport &sweep) {
  out << "# PS-DCT coefficient sweep (codebook size " << sweep.codebook_size
      << ")\n\n";
  out << "Training cycles: " << sweep.train_cycles << "\n\n";
  out << "| Coeffs | MEC % (incl. c0) | MEC % (excl. c0) | Accuracy % | "
         "ref MEC % | ref Accuracy % |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const SweepRow &row : sweep.rows) {
    std::optional<double> rm, ra;
    for (const auto &ref : kCoeffReference)
      if (ref.num_coeffs == row.num_coeffs) rm = ref.mec, ra = ref.accuracy;
    out << "| " << row.num_coeffs << " | " << Percent(row.mec_with_dc) << " | "
        << Percent(row.mec_without_dc) << " | " << Percent(row.accuracy) << " ("
        << row.correct << "/" << row.total << ") | " << Ref(rm) << " | "
        << Ref(ra) << " |\n";
  }
  out << "\nref columns: published figures for a 30-speaker TIMIT subset.\n";
}

void WriteAccuracyCsv(std::ostream &out, const EvalReport &report) {
  out << "system,codebook_size,correct,total,accuracy,alpha\n";
  for (const SystemAccuracy &a : report.accuracies) {
    out << a.system << ',' << a.codebook_size << ',' << a.correct << ','
        << a.total << ',' << a.accuracy << ',';
    if (a.alpha >= 0.0) out << a.alpha;
    out << '\n';
  }
}

void WriteTrialsCsv(std::ostream &out, const EvalReport &report) {
  out << "codebook_size,true_speaker,system,candidate,score,n_vectors,rank\n";
  for (const Trial &t : report.trials) {
    auto emit = [&](const char *system, const Identification &id) {
      for (std::size_t r = 0; r < id.ranking.size(); ++r)
        out << t.codebook_size << ',' << t.speaker_id << ',' << system << ','
            << id.ranking[r].speaker_id << ',' << id.ranking[r].cmd << ','
            << id.ranking[r].n_vectors << ',' << r + 1 << '\n';
    };
    if (t.psdct) emit("psdct", *t.psdct);
    if (t.mfcc) emit("mfcc", *t.mfcc);
    if (t.fused) {
      for (std::size_t r = 0; r < t.fused->ranking.size(); ++r)
        out << t.codebook_size << ',' << t.speaker_id << ",fused,"
            << t.fused->ranking[r].speaker_id << ','
            << t.fused->ranking[r].d_com << ",," << r + 1 << '\n';
    }
  }
}

void WriteSweepCsv(std::ostream &out, const SweepReport &sweep) {
  out << "num_coeffs,mec_with_dc,mec_without_dc,correct,total,accuracy\n";
  for (const SweepRow &r : sweep.rows)
    out << r.num_coeffs << ',' << r.mec_with_dc << ',' << r.mec_without_dc
        << ',' << r.correct << ',' << r.total << ',' << r.accuracy << '\n';
}

}  // namespace pssid
