// Copyright 2026 The nullshift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Result curves and their CSV form.
//
// Layout: zero or more "# key=value" metadata lines, then the header
//   abscissa,value,ci95,scheme,N,gamma,pfa_target,cfo,seed,trials
// then one row per point. Reals use the shortest decimal that round-trips,
// so parse_csv(emit) reproduces every double bit for bit.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nullshift {

struct CurvePoint {
  double abscissa = 0.0;
  double value = 0.0;
  double ci95 = 0.0;
  std::string scheme;
  int n = 0;
  double gamma = 0.0;
  double pfa_target = 0.0;
  double cfo = 0.0;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;

  bool operator==(const CurvePoint&) const = default;
};

struct SimCurve {
  std::vector<std::pair<std::string, std::string>> meta;  // ordered
  std::vector<CurvePoint> points;

  /// Value of a metadata key, or empty.
  std::string meta_value(const std::string& key) const;
  void set_meta(const std::string& key, const std::string& value);

  bool operator==(const SimCurve&) const = default;
};

inline constexpr const char* kCsvHeader =
    "abscissa,value,ci95,scheme,N,gamma,pfa_target,cfo,seed,trials";

/// Throws ConfigError for an empty curve or metadata containing newlines.
std::string to_csv(const SimCurve& curve);
SimCurve from_csv(const std::string& text);

void emit_csv(const SimCurve& curve, const std::string& path);
SimCurve parse_csv(const std::string& path);

}  // namespace nullshift
