// include/pssid/types.h
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

#ifndef PSSID_TYPES_H_
#define PSSID_TYPES_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pssid {

// Base class for all recoverable errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FeatureKind { kPsDct, kMfcc };

std::string_view FeatureKindName(FeatureKind kind);
// Accepts "psdct" / "mfcc" (case-sensitive); throws Error otherwise.
FeatureKind ParseFeatureKind(std::string_view name);

// A fixed-dimension feature vector tagged with the analysis that produced it.
struct FeatureVector {
  std::vector<double> values;
  FeatureKind kind = FeatureKind::kPsDct;

  std::size_t dim() const { return values.size(); }
};

}  // namespace pssid

#endif  // PSSID_TYPES_H_
