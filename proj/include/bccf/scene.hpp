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
#include <random>
#include <vector>

#include "bccf/bbox.hpp"
#include "bccf/metric.hpp"

namespace bccf {

struct Detection {
  int frame = 0;
  int camera = 0;
  BBox box;
  FeatureVector feature;
  int truth_id = -1;
};

// One absence of an object: last visible at `leave_frame`, visible again from
// `return_frame` at a displaced position.
struct ReEntry {
  int object = 0;
  int leave_frame = 0;
  int return_frame = 0;
};

struct SceneSpec {
  int objects = 10;
  int frames = 200;
  int camera = 0;
  std::size_t dimension = 128;
  MetricKind metric = MetricKind::kCosine;
  double noise = 0.05;       // radius of the additive feature perturbation
  double separation = 0.8;   // minimum pairwise distance between latent features
  int min_lifespan = 0;      // 0: objects stay until the last frame
  int reentries = 3;         // randomly scheduled when `schedule` is empty
  int gap = 40;              // frames between leaving and returning
  std::vector<ReEntry> schedule;
  double image_width = 1920.0;
  double image_height = 1080.0;
  double box_jitter = 1.0;   // pixel std-dev on the observed box center

  void validate() const;
};

// Draws a uniformly random unit vector.
FeatureVector random_unit(std::size_t dimension, std::mt19937_64& rng);

// Rejection-samples `count` unit vectors whose pairwise distance is at least
// `min_separation`. Throws InvalidScene after too many rejections.
std::vector<FeatureVector> separated_centers(std::size_t count, std::size_t dimension,
                                             double min_separation, MetricKind metric,
                                             std::mt19937_64& rng);

// normalize(center + r * direction) with r uniform in [0, radius].
FeatureVector noisy_sample(const FeatureVector& center, double radius, std::mt19937_64& rng);

struct Scene {
  std::vector<Detection> detections;   // frame-ordered
  std::vector<FeatureVector> latents;  // one per truth id
  std::vector<ReEntry> reentries;
};

// Deterministic for a given (spec, seed). Objects move in separate horizontal
// lanes so boxes of different identities never overlap.
Scene generate_scene(const SceneSpec& spec, std::uint64_t seed);

}  // namespace bccf
