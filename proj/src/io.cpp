// Copyright 2026 The bccf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bccf/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace bccf {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(std::string_view text, std::size_t line) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InputError("not a number: '" + std::string(text) + "'", line);
  }
  if (!std::isfinite(v)) throw InputError("non-finite value '" + std::string(text) + "'", line);
  return v;
}

long long parse_integer(std::string_view text, std::size_t line) {
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InputError("not an integer: '" + std::string(text) + "'", line);
  }
  return v;
}

bool looks_numeric(std::string_view field) {
  if (field.empty()) return false;
  const char c = field.front();
  return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' || c == 'n' || c == 'N' ||
         c == 'i' || c == 'I';
}

FeatureVector parse_features(const std::vector<std::string_view>& fields, std::size_t begin,
                             std::size_t count, std::size_t line) {
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = parse_real(fields[begin + i], line);
  return FeatureVector(std::move(values));
}

void check_dimension(std::size_t dim, std::optional<std::size_t> expected, std::size_t line) {
  if (expected && dim != *expected) {
    throw InputError("dimension mismatch: expected " + std::to_string(*expected) + " features, got " +
                         std::to_string(dim),
                     line);
  }
}

constexpr std::size_t kDetectionPrefix = 7;  // frame,camera,u,v,gamma,h,truth_id

std::vector<Detection> parse_detection_lines(std::istream& in, std::size_t dim, std::size_t line_no) {
  std::vector<Detection> out;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != kDetectionPrefix + dim) {
      throw InputError("expected " + std::to_string(kDetectionPrefix + dim) + " fields, got " +
                           std::to_string(f.size()),
                       line_no);
    }
    Detection d;
    d.frame = static_cast<int>(parse_integer(f[0], line_no));
    d.camera = static_cast<int>(parse_integer(f[1], line_no));
    d.box = BBox{parse_real(f[2], line_no), parse_real(f[3], line_no), parse_real(f[4], line_no),
                 parse_real(f[5], line_no)};
    if (!(d.box.h > 0.0) || !(d.box.gamma > 0.0)) {
      throw InputError("box height and aspect ratio must be positive", line_no);
    }
    d.truth_id = static_cast<int>(parse_integer(f[6], line_no));
    d.feature = parse_features(f, kDetectionPrefix, dim, line_no);
    out.push_back(std::move(d));
  }
  return out;
}

std::size_t detection_dimension(std::string_view header, std::size_t line_no) {
  const auto f = split_csv(header);
  if (f.size() < kDetectionPrefix || f[0] != "frame") {
    throw InputError("not a detection stream header", line_no);
  }
  return f.size() - kDetectionPrefix;
}

}  // namespace

std::vector<Detection> read_detections(std::istream& in, std::optional<std::size_t> expected_dimension) {
  std::string header;
  std::size_t line_no = 0;
  while (std::getline(in, header)) {
    ++line_no;
    if (!trim(header).empty()) break;
  }
  if (trim(header).empty()) return {};
  const std::size_t dim = detection_dimension(header, line_no);
  check_dimension(dim, expected_dimension, line_no);
  return parse_detection_lines(in, dim, line_no);
}

void write_detections(std::ostream& out, std::span<const Detection> detections) {
  const std::size_t dim = detections.empty() ? 0 : detections.front().feature.size();
  out << "frame,camera,u,v,gamma,h,truth_id";
  for (std::size_t i = 0; i < dim; ++i) out << ",f" << i;
  out << '\n';
  for (const auto& d : detections) {
    out << d.frame << ',' << d.camera << ',' << format_double(d.box.u) << ','
        << format_double(d.box.v) << ',' << format_double(d.box.gamma) << ','
        << format_double(d.box.h) << ',' << d.truth_id;
    for (double x : d.feature.values()) out << ',' << format_double(x);
    out << '\n';
  }
}

Corpus read_corpus(std::istream& in, std::optional<std::size_t> expected_dimension) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) return corpus;

  const auto first = split_csv(line);
  if (first[0] == "frame") {
    const std::size_t dim = detection_dimension(line, line_no);
    check_dimension(dim, expected_dimension, line_no);
    corpus.detection_stream = true;
    corpus.dimension = dim;
    std::size_t data_line = line_no;
    for (auto& d : parse_detection_lines(in, dim, line_no)) {
      CorpusRow row{std::move(d.feature), std::nullopt, ++data_line};
      if (d.truth_id >= 0) row.group = d.truth_id;
      corpus.rows.push_back(std::move(row));
    }
    return corpus;
  }

  std::size_t width = first.size();
  bool has_label = false;
  bool pending_data = true;
  if (!looks_numeric(first[0])) {
    has_label = first.back() == "label";
    pending_data = false;
  } else if (expected_dimension && width == *expected_dimension + 1) {
    has_label = true;
  }
  const std::size_t dim = has_label ? width - 1 : width;
  if (dim == 0) throw InputError("no feature columns", line_no);
  check_dimension(dim, expected_dimension, line_no);
  corpus.dimension = dim;

  auto parse_row = [&](const std::string& text, std::size_t at) {
    const auto f = split_csv(text);
    if (f.size() != width) {
      throw InputError("expected " + std::to_string(width) + " fields, got " +
                           std::to_string(f.size()),
                       at);
    }
    CorpusRow row{parse_features(f, 0, dim, at), std::nullopt, at};
    if (has_label && !f.back().empty()) row.group = parse_integer(f.back(), at);
    corpus.rows.push_back(std::move(row));
  };
  if (pending_data) parse_row(line, line_no);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    parse_row(line, line_no);
  }
  return corpus;
}

KeyValues read_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const auto body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw InputError("expected key=value", line_no);
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw InputError("empty key", line_no);
    auto [it, inserted] = out.emplace(key, value);
    if (!inserted) it->second += ";" + value;
  }
  return out;
}

namespace {

double real_of(const KeyValues& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_real(it->second, 0);
}

long long int_of(const KeyValues& kv, const std::string& key, long long fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_integer(it->second, 0);
}

}  // namespace

IndexConfig apply_index_config(IndexConfig base, const KeyValues& values) {
  try {
    base.dimension = static_cast<std::size_t>(int_of(values, "dimension", static_cast<long long>(base.dimension)));
    if (const auto it = values.find("metric"); it != values.end()) base.metric = parse_metric(it->second);
    base.beta = real_of(values, "beta", base.beta);
    base.zeta = real_of(values, "zeta", base.zeta);
    base.c_max = static_cast<std::size_t>(int_of(values, "c_max", static_cast<long long>(base.c_max)));
  } catch (const InvalidConfig& e) {
    throw InputError(e.what());
  }
  return base;
}

SceneSpec apply_scene_spec(SceneSpec base, const KeyValues& values) {
  base.objects = static_cast<int>(int_of(values, "objects", base.objects));
  base.frames = static_cast<int>(int_of(values, "frames", base.frames));
  base.camera = static_cast<int>(int_of(values, "camera", base.camera));
  base.dimension = static_cast<std::size_t>(int_of(values, "dimension", static_cast<long long>(base.dimension)));
  if (const auto it = values.find("metric"); it != values.end()) {
    try {
      base.metric = parse_metric(it->second);
    } catch (const InvalidConfig& e) {
      throw InputError(e.what());
    }
  }
  base.noise = real_of(values, "noise", base.noise);
  base.separation = real_of(values, "separation", base.separation);
  base.min_lifespan = static_cast<int>(int_of(values, "min_lifespan", base.min_lifespan));
  base.reentries = static_cast<int>(int_of(values, "reentries", base.reentries));
  base.gap = static_cast<int>(int_of(values, "gap", base.gap));
  base.image_width = real_of(values, "width", base.image_width);
  base.image_height = real_of(values, "height", base.image_height);
  base.box_jitter = real_of(values, "jitter", base.box_jitter);
  if (const auto it = values.find("reentry"); it != values.end()) {
    base.schedule.clear();
    std::stringstream entries(it->second);
    std::string entry;
    while (std::getline(entries, entry, ';')) {
      if (trim(entry).empty()) continue;
      std::stringstream parts(entry);
      std::string a, b, c;
      if (!std::getline(parts, a, ':') || !std::getline(parts, b, ':') || !std::getline(parts, c)) {
        throw InputError("reentry expects object:leave:return, got '" + entry + "'");
      }
      base.schedule.push_back({static_cast<int>(parse_integer(trim(a), 0)),
                               static_cast<int>(parse_integer(trim(b), 0)),
                               static_cast<int>(parse_integer(trim(c), 0))});
    }
  }
  return base;
}

void write_mot_header(std::ostream& out) {
  out << "id_sw,frag,fp,fn,gt,matches,truth_ids,mt,ml,mota,motp";
}

void write_mot_row(std::ostream& out, const MotReport& r) {
  out << r.id_sw << ',' << r.frag << ',' << r.fp << ',' << r.fn << ',' << r.gt << ','
      << r.matches << ',' << r.truth_ids << ',' << format_double(r.mt) << ','
      << format_double(r.ml) << ',' << format_double(r.mota) << ',' << format_double(r.motp);
}

}  // namespace bccf
