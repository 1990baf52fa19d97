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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bccf/config.hpp"
#include "bccf/mot.hpp"
#include "bccf/scene.hpp"

namespace bccf {

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

struct CorpusRow {
  FeatureVector vector;
  std::optional<std::int64_t> group;  // label column or truth_id, when present
  std::size_t line = 0;
};

struct Corpus {
  std::vector<CorpusRow> rows;
  bool detection_stream = false;
  std::size_t dimension = 0;  // 0 for an empty input
};

// Reads either a detection stream (header starting with "frame,") or a bare
// feature table f0..f{D-1}[,label] with an optional header. Rows with the wrong
// width or a non-finite value are rejected with their line number.
Corpus read_corpus(std::istream& in, std::optional<std::size_t> expected_dimension = std::nullopt);

std::vector<Detection> read_detections(std::istream& in,
                                       std::optional<std::size_t> expected_dimension = std::nullopt);
void write_detections(std::ostream& out, std::span<const Detection> detections);

using KeyValues = std::map<std::string, std::string>;

// key=value lines; blank lines and '#' comments are skipped. Repeated keys are
// joined with ';'.
KeyValues read_key_values(std::istream& in);

// Applies recognized keys (dimension, metric, beta, zeta, c_max) on top of `base`.
// Unknown keys are ignored; malformed values throw InputError.
IndexConfig apply_index_config(IndexConfig base, const KeyValues& values);

// Recognized keys: objects, frames, camera, dimension, metric, noise, separation,
// min_lifespan, reentries, gap, reentry (obj:leave:return[;...]), width, height, jitter.
SceneSpec apply_scene_spec(SceneSpec base, const KeyValues& values);

void write_mot_header(std::ostream& out);
void write_mot_row(std::ostream& out, const MotReport& report);

}  // namespace bccf
