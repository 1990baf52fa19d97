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

#include "bccf/metric.hpp"

namespace bccf {

inline constexpr std::size_t kPartitionMaxIterations = 100;
inline constexpr std::size_t kPartitionSeedSample = 64;

struct PartitionOutcome {
  std::vector<FeatureVector> cluster1;
  std::vector<FeatureVector> cluster2;
  FeatureVector center1;
  FeatureVector center2;
  std::size_t iterations = 0;
  bool converged = false;
};

// Two-means clustering. Centers start at the mutually farthest pair of a seeded
// sample of at most kPartitionSeedSample points; assignment sends x to cluster1
// iff d(x, c1) < d(x, c2), matching tree routing. The returned clusters are the
// assignment against the returned centers, so every member is at least as close
// to its own center as to the other one.
//
// Throws DegeneratePartition when all points coincide under `metric`, and
// std::invalid_argument when fewer than two points are given.
PartitionOutcome partition(std::span<const FeatureVector> data, MetricKind metric,
                           std::uint64_t seed, std::uint64_t* distance_counter = nullptr);

}  // namespace bccf
