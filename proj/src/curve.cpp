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

#include "nullshift/curve.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "nullshift/config.hpp"
#include "nullshift/types.hpp"

namespace nullshift {

std::string SimCurve::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return {};
}

void SimCurve::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : meta) {
    if (k == key) {
      v = value;
      return;
    }
  }
  meta.emplace_back(key, value);
}

std::string to_csv(const SimCurve& curve) {
  if (curve.points.empty()) throw ConfigError("refusing to write an empty curve");
  std::string out;
  for (const auto& [k, v] : curve.meta) {
    if (k.find_first_of("=\n\r") != std::string::npos || v.find_first_of("\n\r") != std::string::npos) {
      throw ConfigError("metadata key/value not representable: '" + k + "'");
    }
    out += "# " + k + "=" + v + "\n";
  }
  out += kCsvHeader;
  out += '\n';
  for (const auto& p : curve.points) {
    if (p.scheme.find(',') != std::string::npos) throw ConfigError("scheme label contains ','");
    out += format_double(p.abscissa) + ',' + format_double(p.value) + ',' +
           format_double(p.ci95) + ',' + p.scheme + ',' + std::to_string(p.n) + ',' +
           format_double(p.gamma) + ',' + format_double(p.pfa_target) + ',' +
           format_double(p.cfo) + ',' + std::to_string(p.seed) + ',' +
           std::to_string(p.trials) + '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    fields.push_back(line.substr(pos, next == std::string_view::npos ? line.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return fields;
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("bad unsigned field '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

SimCurve from_csv(const std::string& text) {
  SimCurve curve;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line.rfind("# ", 0) == 0) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed metadata line " + std::to_string(line_no));
        curve.meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
        continue;
      }
      if (line != kCsvHeader) throw ConfigError("unexpected CSV header: '" + line + "'");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw ConfigError("CSV line " + std::to_string(line_no) + ": expected 10 fields");
    CurvePoint p;
    p.abscissa = parse_double(f[0]);
    p.value = parse_double(f[1]);
    p.ci95 = parse_double(f[2]);
    p.scheme = std::string(f[3]);
    p.n = static_cast<int>(parse_int(f[4]));
    p.gamma = parse_double(f[5]);
    p.pfa_target = parse_double(f[6]);
    p.cfo = parse_double(f[7]);
    p.seed = parse_u64(f[8]);
    p.trials = parse_int(f[9]);
    curve.points.push_back(std::move(p));
  }
  if (!header_seen) throw ConfigError("CSV has no header row");
  if (curve.points.empty()) throw ConfigError("CSV curve has no points");
  return curve;
}

void emit_csv(const SimCurve& curve, const std::string& path) {
  const std::string text = to_csv(curve);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

SimCurve parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_csv(buffer.str());
}

}  // namespace nullshift
