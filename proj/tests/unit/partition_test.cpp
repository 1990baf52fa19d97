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

#include <algorithm>
#include <random>

#include "../common/test_support.hpp"
#include "bccf/errors.hpp"
#include "bccf/partition.hpp"

namespace bccf {
namespace {

constexpr auto kEu = MetricKind::kEuclidean;

double cost(const std::vector<FeatureVector>& cl) {
  if (cl.empty()) return 0.0;
  const auto m = centroid(cl, kEu);
  double s = 0.0;
  for (const auto& x : cl) s += squared_euclidean(x, m);
  return s;
}

double brute_force_best(const std::vector<FeatureVector>& pts) {
  const std::size_t n = pts.size();
  double best = INFINITY;
  for (std::size_t mask = 2; mask < (std::size_t{1} << n); mask += 2) {
    std::vector<FeatureVector> a, b;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? a : b).push_back(pts[i]);
    best = std::min(best, cost(a) + cost(b));
  }
  return best;
}

TEST(Partition, TwoPoints) {
  const std::vector<FeatureVector> pts{{0.0, 0.0}, {1.0, 1.0}};
  const auto out = partition(pts, kEu, 1);
  ASSERT_EQ(out.cluster1.size(), 1u);
  ASSERT_EQ(out.cluster2.size(), 1u);
  EXPECT_NE(out.cluster1[0], out.cluster2[0]);
  EXPECT_EQ(out.center1, out.cluster1[0]);
  EXPECT_EQ(out.center2, out.cluster2[0]);
  EXPECT_TRUE(out.converged);
}

TEST(Partition, TwoTightGroups) {
  const std::vector<FeatureVector> pts{{0.0, 0.0}, {10.0, 10.0}, {0.1, 0.0}, {10.0, 10.1}};
  const auto out = partition(pts, kEu, 7);
  auto sorted = [](std::vector<FeatureVector> v) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x[0] + x[1] < y[0] + y[1]; });
    return v;
  };
  const auto c1 = sorted(out.cluster1), c2 = sorted(out.cluster2);
  const auto& low = c1[0][0] < 1.0 ? c1 : c2;
  const auto& high = c1[0][0] < 1.0 ? c2 : c1;
  EXPECT_EQ(low, (std::vector<FeatureVector>{{0.0, 0.0}, {0.1, 0.0}}));
  EXPECT_EQ(high, (std::vector<FeatureVector>{{10.0, 10.0}, {10.0, 10.1}}));
  const auto& low_center = c1[0][0] < 1.0 ? out.center1 : out.center2;
  EXPECT_NEAR(low_center[0], 0.05, 1e-15);
  EXPECT_NEAR(low_center[1], 0.0, 1e-15);
  EXPECT_NEAR(cost(out.cluster1) + cost(out.cluster2), brute_force_best(pts), 1e-12);
}

TEST(Partition, IdenticalPointsRejected) {
  const std::vector<FeatureVector> pts(5, FeatureVector{1.0, 2.0});
  EXPECT_THROW(partition(pts, kEu, 0), DegeneratePartition);
  // parallel vectors coincide under cosine
  const std::vector<FeatureVector> par{{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}};
  EXPECT_THROW(partition(par, MetricKind::kCosine, 0), DegeneratePartition);
}

TEST(Partition, TooFewPoints) {
  const std::vector<FeatureVector> one{{1.0}};
  EXPECT_THROW(partition(one, kEu, 0), std::invalid_argument);
}

TEST(Partition, MostlyIdenticalStillSplits) {
  std::vector<FeatureVector> pts(99, FeatureVector{1.0, 0.0});
  pts.push_back(FeatureVector{0.0, 1.0});
  const auto out = partition(pts, kEu, 3);
  EXPECT_EQ(std::min(out.cluster1.size(), out.cluster2.size()), 1u);
}

TEST(Partition, DeterministicAndConserving) {
  std::mt19937_64 rng(11);
  std::vector<FeatureVector> pts;
  for (int i = 0; i < 300; ++i) pts.push_back(testing::gaussian_vector(8, rng));
  const auto x = partition(pts, MetricKind::kCosine, 5);
  const auto y = partition(pts, MetricKind::kCosine, 5);
  EXPECT_EQ(x.cluster1, y.cluster1);
  EXPECT_EQ(x.center2, y.center2);
  EXPECT_EQ(x.cluster1.size() + x.cluster2.size(), pts.size());
}

TEST(Partition, AssignmentIsLocallyOptimal) {
  std::mt19937_64 rng(12);
  for (MetricKind m : {MetricKind::kCosine, kEu}) {
    for (int t = 0; t < 50; ++t) {
      std::vector<FeatureVector> pts;
      for (int i = 0; i < 40; ++i) pts.push_back(testing::gaussian_vector(4, rng));
      const auto out = partition(pts, m, static_cast<std::uint64_t>(t));
      for (const auto& p : out.cluster1) EXPECT_LE(distance(p, out.center1, m), distance(p, out.center2, m));
      for (const auto& p : out.cluster2) EXPECT_LE(distance(p, out.center2, m), distance(p, out.center1, m));
    }
  }
}

TEST(Partition, SeparatedBlobsMatchBruteForce) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0.0, 0.2);
  for (int t = 0; t < 30; ++t) {
    std::vector<FeatureVector> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(FeatureVector{g(rng), g(rng)});
    for (int i = 0; i < 5; ++i) pts.push_back(FeatureVector{5.0 + g(rng), g(rng)});
    const auto out = partition(pts, kEu, static_cast<std::uint64_t>(t));
    EXPECT_NEAR(cost(out.cluster1) + cost(out.cluster2), brute_force_best(pts), 1e-9);
    EXPECT_EQ(std::min(out.cluster1.size(), out.cluster2.size()), 4u);
  }
}

}  // namespace
}  // namespace bccf
