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
#include "bccf/errors.hpp"
#include "bccf/oracle.hpp"

namespace bccf {
namespace {

using testing::at_cosine_distance;
using testing::gaussian_vector;

constexpr auto kCos = MetricKind::kCosine;

TEST(LinearSearch, EmptyStore) {
  const FlatStore store;
  const auto r = linear_label_search(store, FeatureVector{1.0, 0.0}, 0.2, kCos);
  EXPECT_FALSE(r.label.has_value());
  EXPECT_EQ(r.stats.distances_computed, 0u);
}

TEST(LinearSearch, ExactEntry) {
  FlatStore store;
  store.add(FeatureVector{0.0, 1.0}, ProfileLabel{4});
  store.add(FeatureVector{1.0, 0.0}, ProfileLabel{7});
  const auto r = linear_label_search(store, FeatureVector{1.0, 0.0}, 0.2, kCos);
  EXPECT_EQ(r.label, ProfileLabel{7});
  EXPECT_EQ(r.nearest_distance, 0.0);
  EXPECT_EQ(r.stats.distances_computed, 2u);
}

TEST(LinearSearch, PicksNearestUnderBeta) {
  std::mt19937_64 rng(1);
  const auto q = normalize(gaussian_vector(10, rng));
  FlatStore store;
  store.add(at_cosine_distance(q, 0.5, rng), ProfileLabel{1});
  store.add(at_cosine_distance(q, 0.1, rng), ProfileLabel{2});
  store.add(at_cosine_distance(q, 0.3, rng), ProfileLabel{3});
  const auto r = linear_label_search(store, q, 0.2, kCos);
  EXPECT_EQ(r.label, ProfileLabel{2});
  EXPECT_EQ(r.nearest, 1u);
  EXPECT_NEAR(r.nearest_distance, 0.1, 1e-12);
  EXPECT_FALSE(linear_label_search(store, q, 0.05, kCos).label.has_value());
}

TEST(LinearSearch, TiesGoToEarliest) {
  FlatStore store;
  store.add(FeatureVector{1.0, 1.0}, ProfileLabel{1});
  store.add(FeatureVector{1.0, -1.0}, ProfileLabel{2});
  const auto r = linear_label_search(store, FeatureVector{1.0, 0.0}, 0.5, kCos);
  EXPECT_EQ(r.label, ProfileLabel{1});
}

TEST(LinearSearch, IsExhaustive) {
  std::mt19937_64 rng(2);
  FlatStore store;
  for (int i = 0; i < 500; ++i) store.add(gaussian_vector(6, rng), ProfileLabel{static_cast<std::uint64_t>(i + 1)});
  for (int t = 0; t < 50; ++t) {
    const auto q = gaussian_vector(6, rng);
    const auto r = linear_label_search(store, q, 0.2, kCos);
    for (const auto& e : store.entries()) EXPECT_LE(r.nearest_distance, distance(e.vector, q, kCos));
    EXPECT_EQ(r.stats.distances_computed, store.size());
  }
}

TEST(FlatStore, MirrorsEngine) {
  IndexConfig cfg;
  cfg.dimension = 4;
  cfg.c_max = 5;
  LabelEngine e(cfg);
  std::mt19937_64 rng(3);
  const auto r = e.label_search(gaussian_vector(4, rng));
  std::vector<FeatureVector> bag;
  for (int i = 0; i < 12; ++i) bag.push_back(gaussian_vector(4, rng));
  e.batch_insert({r.label, bag, std::nullopt});
  const auto store = FlatStore::mirror(e);
  EXPECT_EQ(store.size(), 12u);
  for (const auto& entry : store.entries()) EXPECT_EQ(entry.label, r.label);
}

TEST(Agreement, SingleProfileAgreesEverywhere) {
  IndexConfig cfg;
  cfg.dimension = 16;
  LabelEngine e(cfg);
  std::mt19937_64 rng(4);
  const auto center = normalize(gaussian_vector(16, rng));
  const auto r = e.label_search(center);
  std::vector<FeatureVector> bag, queries;
  for (int i = 0; i < 20; ++i) bag.push_back(at_cosine_distance(center, 0.01, rng));
  for (int i = 0; i < 50; ++i) queries.push_back(at_cosine_distance(center, 0.02, rng));
  e.batch_insert({r.label, bag, std::nullopt});
  const auto rep = agreement(e, FlatStore::mirror(e), queries);
  EXPECT_EQ(rep.agreement, 1.0);
  EXPECT_EQ(rep.queries, 50u);
  EXPECT_EQ(rep.oracle_mean_distances, 20.0);
  EXPECT_LT(rep.tree_mean_distances, rep.oracle_mean_distances);
}

TEST(Agreement, MirrorViolation) {
  IndexConfig cfg;
  cfg.dimension = 2;
  LabelEngine e(cfg);
  const auto r = e.label_search(FeatureVector{1.0, 0.0});
  e.batch_insert({r.label, {FeatureVector{1.0, 0.0}}, std::nullopt});
  FlatStore store;
  const std::vector<FeatureVector> qs{{1.0, 0.0}};
  EXPECT_THROW(agreement(e, store, qs), InconsistentBaseline);
}

TEST(Agreement, ApproximationIsReportedNotHidden) {
  // random profiles in a low dimension, where greedy descent can miss
  IndexConfig cfg;
  cfg.dimension = 3;
  cfg.beta = 0.05;
  LabelEngine e(cfg);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto q = gaussian_vector(3, rng);
    const auto r = e.label_search(q);
    if (r.created) e.batch_insert({r.label, {q}, std::nullopt});
  }
  std::vector<FeatureVector> queries;
  for (int i = 0; i < 300; ++i) queries.push_back(gaussian_vector(3, rng));
  const auto rep = agreement(e, FlatStore::mirror(e), queries);
  EXPECT_GE(rep.agreement, 0.0);
  EXPECT_LE(rep.agreement, 1.0);
  EXPECT_EQ(rep.agreed, static_cast<std::size_t>(rep.agreement * 300 + 0.5));
}

}  // namespace
}  // namespace bccf
