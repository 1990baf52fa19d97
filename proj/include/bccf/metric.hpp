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
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "bccf/errors.hpp"

namespace bccf {

enum class MetricKind { kCosine, kEuclidean };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric(std::string_view name);

// Fixed-dimension appearance vector. Entries are always finite.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<double> values);
  FeatureVector(std::initializer_list<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const double* data() const noexcept { return values_.data(); }

  double norm() const noexcept { return norm_; }

  friend bool operator==(const FeatureVector& a, const FeatureVector& b) { return a.values_ == b.values_; }

 private:
  std::vector<double> values_;
  double norm_ = 0.0;
};

// Throws DimensionMismatch unless a and b have the same length.
void require_same_dimension(const FeatureVector& a, const FeatureVector& b);

// Cosine distance is computed as half the squared gap between the normalized
// vectors, which equals 1 - cos(a, b) and is exactly zero for identical inputs.
double distance(const FeatureVector& a, const FeatureVector& b, MetricKind kind);

// Same as above, incrementing `counter` once per call.
inline double distance(const FeatureVector& a, const FeatureVector& b, MetricKind kind,
                       std::uint64_t& counter) {
  ++counter;
  return distance(a, b, kind);
}

FeatureVector normalize(const FeatureVector& v);

// Componentwise average; re-normalized under the cosine metric.
FeatureVector mean(const FeatureVector& a, const FeatureVector& b, MetricKind kind);

// Center of gravity of a non-empty set; re-normalized under the cosine metric.
FeatureVector centroid(std::span<const FeatureVector> points, MetricKind kind);

double squared_euclidean(const FeatureVector& a, const FeatureVector& b);

// Brings a raw vector into the form the index stores for `kind`.
inline FeatureVector canonicalize(const FeatureVector& v, MetricKind kind) {
  return kind == MetricKind::kCosine ? normalize(v) : v;
}

}  // namespace bccf
