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

#include <gtest/gtest.h>

#include <random>

#include "../common/test_support.hpp"
#include "bccf/config.hpp"
#include "bccf/errors.hpp"
#include "bccf/metric.hpp"

namespace bccf {
namespace {

using testing::gaussian_vector;

TEST(Distance, SelfDistanceIsZero) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto v = gaussian_vector(16, rng);
    EXPECT_EQ(distance(v, v, MetricKind::kCosine), 0.0);
    EXPECT_EQ(distance(v, v, MetricKind::kEuclidean), 0.0);
  }
}

TEST(Distance, OrthonormalCosineIsOne) {
  const FeatureVector e1{1.0, 0.0, 0.0};
  const FeatureVector e2{0.0, 1.0, 0.0};
  EXPECT_DOUBLE_EQ(distance(e1, e2, MetricKind::kCosine), 1.0);
}

TEST(Distance, EuclideanThreeFourFive) {
  EXPECT_DOUBLE_EQ(distance(FeatureVector{0.0, 0.0}, FeatureVector{3.0, 4.0}, MetricKind::kEuclidean), 5.0);
}

TEST(Distance, CosineIgnoresScale) {
  EXPECT_EQ(distance(FeatureVector{1.0, 2.0}, FeatureVector{2.0, 4.0}, MetricKind::kCosine), 0.0);
  EXPECT_NEAR(distance(FeatureVector{1.0, 0.0}, FeatureVector{-3.0, 0.0}, MetricKind::kCosine), 2.0, 1e-15);
}

TEST(Distance, DimensionMismatch) {
  EXPECT_THROW(distance(FeatureVector{1.0}, FeatureVector{1.0, 2.0}, MetricKind::kCosine),
               DimensionMismatch);
}

TEST(Distance, ZeroVectorUnderCosine) {
  EXPECT_THROW(distance(FeatureVector{0.0, 0.0}, FeatureVector{1.0, 2.0}, MetricKind::kCosine),
               DegenerateVector);
}

TEST(Distance, CounterIncrements) {
  std::uint64_t counter = 0;
  const FeatureVector a{1.0, 0.0};
  distance(a, a, MetricKind::kCosine, counter);
  distance(a, a, MetricKind::kEuclidean, counter);
  EXPECT_EQ(counter, 2u);
}

TEST(Distance, PropertiesOnRandomPairs) {
  std::mt19937_64 rng(2);
  for (MetricKind m : {MetricKind::kCosine, MetricKind::kEuclidean}) {
    for (int i = 0; i < 300; ++i) {
      const auto a = gaussian_vector(8, rng);
      const auto b = gaussian_vector(8, rng);
      const double ab = distance(a, b, m);
      EXPECT_GE(ab, 0.0);
      EXPECT_EQ(ab, distance(b, a, m));
      EXPECT_GT(ab, 0.0);
      EXPECT_EQ(ab, distance(a, b, m));  // deterministic, bitwise
    }
  }
}

TEST(Distance, EuclideanTriangleInequality) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto a = gaussian_vector(5, rng);
    const auto b = gaussian_vector(5, rng);
    const auto c = gaussian_vector(5, rng);
    const auto d = [](const auto& x, const auto& y) { return distance(x, y, MetricKind::kEuclidean); };
    EXPECT_LE(d(a, c), d(a, b) + d(b, c) + 1e-12);
  }
}

TEST(Normalize, Examples) {
  const auto n = normalize(FeatureVector{3.0, 4.0});
  EXPECT_DOUBLE_EQ(n[0], 0.6);
  EXPECT_DOUBLE_EQ(n[1], 0.8);
  const auto e = normalize(FeatureVector{2.0, 0.0, 0.0, 0.0});
  EXPECT_EQ(e, (FeatureVector{1.0, 0.0, 0.0, 0.0}));
}

TEST(Normalize, IdempotentOnUnitVectors) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto u = normalize(gaussian_vector(32, rng));
    EXPECT_NEAR(u.norm(), 1.0, 1e-9);
    const auto uu = normalize(u);
    for (std::size_t k = 0; k < u.size(); ++k) EXPECT_NEAR(uu[k], u[k], 1e-15);
  }
}

TEST(Normalize, ZeroVectorRejected) {
  EXPECT_THROW(normalize(FeatureVector{0.0, 0.0}), DegenerateVector);
}

TEST(Mean, Examples) {
  std::mt19937_64 rng(5);
  const auto v = normalize(gaussian_vector(6, rng));
  const auto vv = mean(v, v, MetricKind::kCosine);
  for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(vv[k], v[k], 1e-15);
  EXPECT_EQ(mean(FeatureVector{0.0, 0.0}, FeatureVector{2.0, 2.0}, MetricKind::kEuclidean),
            (FeatureVector{1.0, 1.0}));
  const auto c = mean(FeatureVector{1.0, 0.0}, FeatureVector{0.0, 1.0}, MetricKind::kCosine);
  EXPECT_NEAR(c[0], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(c[1], std::sqrt(0.5), 1e-15);
  EXPECT_THROW(mean(FeatureVector{1.0}, FeatureVector{1.0, 0.0}, MetricKind::kEuclidean),
               DimensionMismatch);
}

TEST(Centroid, AveragesPoints) {
  const std::vector<FeatureVector> pts{{0.0, 0.0}, {2.0, 0.0}, {1.0, 3.0}};
  EXPECT_EQ(centroid(pts, MetricKind::kEuclidean), (FeatureVector{1.0, 1.0}));
  const auto c = centroid(pts, MetricKind::kCosine);
  EXPECT_NEAR(c.norm(), 1.0, 1e-12);
}

TEST(FeatureVector, RejectsNonFinite) {
  EXPECT_THROW(FeatureVector({1.0, std::nan("")}), NonFiniteValue);
  EXPECT_THROW(FeatureVector({INFINITY}), NonFiniteValue);
}

TEST(Metric, ParseAndPrint) {
  EXPECT_EQ(parse_metric("cosine"), MetricKind::kCosine);
  EXPECT_EQ(parse_metric("euclidean"), MetricKind::kEuclidean);
  EXPECT_EQ(to_string(MetricKind::kEuclidean), "euclidean");
  EXPECT_THROW(parse_metric("manhattan"), InvalidConfig);
}

TEST(IndexConfig, Validation) {
  IndexConfig ok;
  EXPECT_NO_THROW(ok.validate());
  IndexConfig c = ok;
  c.beta = 0.6;
  EXPECT_THROW(c.validate(), InvalidConfig);  // beta must stay below zeta
  c = ok;
  c.beta = 0.0;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = ok;
  c.c_max = 1;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = ok;
  c.dimension = 0;
  EXPECT_THROW(c.validate(), InvalidConfig);
}

TEST(IndexConfig, CapacityIsCeilSqrt) {
  EXPECT_EQ(IndexConfig::capacity_for(0), 2u);
  EXPECT_EQ(IndexConfig::capacity_for(1000), 32u);
  EXPECT_EQ(IndexConfig::capacity_for(1024), 32u);
  EXPECT_EQ(IndexConfig::capacity_for(64000), 253u);
}

}  // namespace
}  // namespace bccf
