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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bccf/bbox.hpp"

namespace bccf {

struct GroundTruthBox {
  int frame = 0;
  int camera = 0;
  int id = 0;
  BBox box;
};

struct Hypothesis {
  int frame = 0;
  int camera = 0;
  std::uint64_t id = 0;
  BBox box;
};

struct MotReport {
  std::size_t id_sw = 0;
  std::size_t frag = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t gt = 0;        // ground-truth boxes over all frames
  std::size_t matches = 0;
  std::size_t truth_ids = 0;
  double mt = 0.0;           // fraction of identities covered >= 80%
  double ml = 0.0;           // fraction of identities covered <= 20%
  double mota = 0.0;
  double motp = 0.0;         // mean IoU over matches
};

// CLEAR-MOT evaluation. Per frame, correspondences from the previous frame are
// kept while their IoU stays above the threshold; remaining pairs are matched
// greedily by decreasing IoU. Throws std::invalid_argument on empty truth.
MotReport compute_mot_metrics(std::span<const Hypothesis> hypotheses,
                              std::span<const GroundTruthBox> truth,
                              double iou_threshold = 0.5);

}  // namespace bccf
