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
#include <memory>
#include <span>
#include <vector>

#include "bccf/engine.hpp"
#include "bccf/kalman.hpp"
#include "bccf/mot.hpp"
#include "bccf/scene.hpp"

namespace bccf {

// Where tracks get their identity from.
class LabelSource {
 public:
  virtual ~LabelSource() = default;
  virtual ProfileLabel assign(const FeatureVector& feature) = 0;
  // Called once per terminated track with the metadata collected for it.
  virtual void submit(const MetadataBag& bag) = 0;
};

class EngineLabelSource final : public LabelSource {
 public:
  explicit EngineLabelSource(LabelEngine& engine) : engine_(engine) {}
  ProfileLabel assign(const FeatureVector& feature) override;
  void submit(const MetadataBag& bag) override;

 private:
  LabelEngine& engine_;
};

// Fresh label for every track, nothing is indexed.
class NaiveLabelSource final : public LabelSource {
 public:
  ProfileLabel assign(const FeatureVector&) override { return labels_.next(); }
  void submit(const MetadataBag&) override {}

 private:
  LabelAllocator labels_;
};

struct TrackingConfig {
  int max_missed = 30;
  double association_iou = 0.3;
  int confirm_after = 0;  // matched frames before the label search fires
  KalmanParams kalman;
};

struct TrackState {
  int track_id = 0;
  int camera = 0;
  GaussianState filter;
  ProfileLabel label;
  int age = 0;
  int hits = 0;
  int missed = 0;
  int first_frame = 0;
  int last_frame = 0;
  MetadataBag bag;
};

struct TrackRecord {
  int frame = 0;
  int camera = 0;
  int track_id = 0;
  ProfileLabel label;
  BBox box;
  int truth_id = -1;
};

struct TrackSummary {
  int track_id = 0;
  int camera = 0;
  ProfileLabel label;
  int first_frame = 0;
  int last_frame = 0;
  std::size_t bag_size = 0;
};

struct TrackingResult {
  std::vector<TrackRecord> records;
  std::vector<TrackSummary> tracks;
  std::size_t label_searches = 0;
};

// Runs detect -> label -> track -> index over a frame-ordered stream. Throws
// InputError if frames go backwards.
TrackingResult run_tracking(std::span<const Detection> stream, LabelSource& labels,
                            const TrackingConfig& config = {});

std::vector<Hypothesis> to_hypotheses(const TrackingResult& result);
std::vector<GroundTruthBox> to_ground_truth(std::span<const Detection> stream);

}  // namespace bccf
