// src/psdct.cc
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

#include "pssid/psdct.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace pssid {

namespace {

// cos(pi m / 2M) for m in [0, 4M).
std::vector<double> CosTable(std::size_t m) {
  std::vector<double> t(4 * m);
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = std::cos(std::numbers::pi * static_cast<double>(i) /
                    (2.0 * static_cast<double>(m)));
  return t;
}

double Energy(std::span<const double> x) {
  return std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
}

}  // namespace

std::vector<double> Dct2Truncated(std::span<const double> frame,
                                  std::size_t count) {
  const std::size_t m = frame.size();
  if (m == 0) throw Error("Dct2: empty frame");
  if (count > m) throw Error("Dct2: more coefficients requested than samples");
  const std::vector<double> table = CosTable(m);
  const std::size_t period = 4 * m;
  const double s0 = std::sqrt(1.0 / static_cast<double>(m));
  const double sk = std::sqrt(2.0 / static_cast<double>(m));
  std::vector<double> c(count);
  for (std::size_t k = 0; k < count; ++k) {
    double acc = 0.0;
    std::size_t idx = k % period;  // (2n + 1) k mod 4M at n = 0
    const std::size_t step = (2 * k) % period;
    for (std::size_t n = 0; n < m; ++n) {
      acc += frame[n] * table[idx];
      idx += step;
      if (idx >= period) idx -= period;
    }
    c[k] = (k == 0 ? s0 : sk) * acc;
  }
  return c;
}

std::vector<double> Dct2(std::span<const double> frame) {
  return Dct2Truncated(frame, frame.size());
}

std::vector<double> NormalizeEnergy(std::span<const double> frame) {
  const double e = Energy(frame);
  if (!(e > 0.0)) throw std::logic_error("NormalizeEnergy: zero-energy frame");
  const double scale = 1.0 / std::sqrt(e);
  std::vector<double> out(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) out[i] = frame[i] * scale;
  return out;
}

FeatureVector PsDctFeature(std::span<const double> cycle,
                           std::size_t num_coeffs) {
  if (num_coeffs == 0) throw Error("PsDctFeature: need at least 1 coefficient");
  if (cycle.size() <= num_coeffs)
    throw Error("PsDctFeature: cycle of " + std::to_string(cycle.size()) +
                " samples too short for " + std::to_string(num_coeffs) +
                " coefficients");
  const std::vector<double> unit = NormalizeEnergy(cycle);
  std::vector<double> c = Dct2Truncated(unit, num_coeffs + 1);
  FeatureVector f;
  f.kind = FeatureKind::kPsDct;
  f.values.assign(c.begin() + 1, c.end());
  return f;
}

FeatureVector PsDctFeature(const PitchCycle &cycle, std::size_t num_coeffs) {
  return PsDctFeature(std::span<const double>(cycle.samples), num_coeffs);
}

std::vector<MecResult> MecSweep(std::span<const PitchCycle> cycles,
                                std::span<const std::size_t> num_coeffs) {
  if (cycles.empty()) throw Error("Mec: empty cycle list");
  std::vector<MecResult> out(num_coeffs.size());
  std::vector<std::size_t> ac_cycles(num_coeffs.size(), 0);
  for (const PitchCycle &cycle : cycles) {
    const std::vector<double> unit = NormalizeEnergy(cycle.samples);
    const std::vector<double> c = Dct2(unit);
    // cum[k] = sum_{j=1..k} c[j]^2
    std::vector<double> cum(c.size(), 0.0);
    for (std::size_t k = 1; k < c.size(); ++k) cum[k] = cum[k - 1] + c[k] * c[k];
    const double total = c[0] * c[0] + cum.back();
    const double ac = cum.back();
    for (std::size_t i = 0; i < num_coeffs.size(); ++i) {
      const std::size_t k = std::min(num_coeffs[i], c.size() - 1);
      out[i].with_dc += cum[k] / total;
      if (ac > 0.0) {
        out[i].without_dc += cum[k] / ac;
        ++ac_cycles[i];
      }
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].with_dc /= static_cast<double>(cycles.size());
    if (ac_cycles[i] > 0) out[i].without_dc /= static_cast<double>(ac_cycles[i]);
  }
  return out;
}

MecResult Mec(std::span<const PitchCycle> cycles, std::size_t num_coeffs) {
  const std::size_t ks[] = {num_coeffs};
  return MecSweep(cycles, ks)[0];
}

}  // namespace pssid
