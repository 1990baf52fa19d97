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

#include "bccf/metric.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace bccf {

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::kCosine ? "cosine" : "euclidean";
}

MetricKind parse_metric(std::string_view name) {
  if (name == "cosine") return MetricKind::kCosine;
  if (name == "euclidean") return MetricKind::kEuclidean;
  throw InvalidConfig("unknown metric '" + std::string(name) + "'");
}

FeatureVector::FeatureVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NonFiniteValue("non-finite feature component at index " + std::to_string(i));
    }
  }
  norm_ = std::sqrt(std::inner_product(values_.begin(), values_.end(), values_.begin(), 0.0));
}

FeatureVector::FeatureVector(std::initializer_list<double> values)
    : FeatureVector(std::vector<double>(values)) {}

void require_same_dimension(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
}

double squared_euclidean(const FeatureVector& a, const FeatureVector& b) {
  require_same_dimension(a, b);
  const double* x = a.data();
  const double* y = b.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

double distance(const FeatureVector& a, const FeatureVector& b, MetricKind kind) {
  require_same_dimension(a, b);
  if (kind == MetricKind::kEuclidean) return std::sqrt(squared_euclidean(a, b));

  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DegenerateVector("cosine distance of a zero vector");
  const double* x = a.data();
  const double* y = b.data();
  const double ia = 1.0 / na;
  const double ib = 1.0 / nb;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = x[i] * ia - y[i] * ib;
    acc += d * d;
  }
  // Parallel inputs leave rounding residue of order 1e-32 after scaling.
  constexpr double kResolution = 1e-24;
  return acc < kResolution ? 0.0 : 0.5 * acc;
}

FeatureVector normalize(const FeatureVector& v) {
  const double n = v.norm();
  if (n == 0.0) throw DegenerateVector("cannot normalize a zero vector");
  std::vector<double> out(v.values().begin(), v.values().end());
  for (double& x : out) x /= n;
  return FeatureVector(std::move(out));
}

FeatureVector mean(const FeatureVector& a, const FeatureVector& b, MetricKind kind) {
  require_same_dimension(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = 0.5 * (a[i] + b[i]);
  FeatureVector m(std::move(out));
  return kind == MetricKind::kCosine ? normalize(m) : m;
}

FeatureVector centroid(std::span<const FeatureVector> points, MetricKind kind) {
  if (points.empty()) throw DegenerateVector("centroid of an empty set");
  std::vector<double> acc(points.front().size(), 0.0);
  for (const auto& p : points) {
    require_same_dimension(points.front(), p);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p[i];
  }
  const double inv = 1.0 / static_cast<double>(points.size());
  for (double& x : acc) x *= inv;
  FeatureVector c(std::move(acc));
  return kind == MetricKind::kCosine ? normalize(c) : c;
}

}  // namespace bccf
