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
#include <optional>
#include <string>

#include "bccf/metric.hpp"

namespace bccf {

// Thresholds and capacity of one index instance. The engine calls validate()
// and refuses invalid combinations.
struct IndexConfig {
  std::size_t dimension = 128;
  MetricKind metric = MetricKind::kCosine;
  double beta = 0.2;   // same-object threshold
  double zeta = 0.6;   // down/up placement threshold
  std::size_t c_max = 892;

  void validate() const;

  // c_max = ceil(sqrt(n)), clamped to at least 2.
  static std::size_t capacity_for(std::size_t expected_size);
};

}  // namespace bccf
