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
#include <sstream>

#include "../common/test_support.hpp"
#include "bccf/errors.hpp"
#include "bccf/workflow.hpp"

namespace bccf {
namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

IndexConfig config_for(std::size_t dim, std::size_t n) {
  IndexConfig cfg;
  cfg.dimension = dim;
  cfg.c_max = IndexConfig::capacity_for(n);
  return cfg;
}

TEST(BuildIndex, EmptyInputGivesZeroRow) {
  LabelEngine e(config_for(4, 0));
  const auto summary = build_index(e, {});
  const auto rec = build_record(e, summary);
  EXPECT_EQ(rec.n, 0u);
  EXPECT_EQ(rec.avg_distances, 0.0);
  EXPECT_EQ(rec.tree, TreeStats{});
  std::ostringstream os;
  write_bench_row(os, rec);
  EXPECT_EQ(os.str(), "build,tree,0,0,0,0,0,0,0,0,0,0\n");
}

TEST(BuildIndex, LabeledClustersGiveOneProfileEach) {
  std::mt19937_64 rng(1);
  const auto centers = separated_centers(4, 32, 0.8, MetricKind::kCosine, rng);
  std::vector<CorpusRow> rows;
  for (int i = 0; i < 100; ++i) {
    const std::size_t c = static_cast<std::size_t>(i) % 4;
    rows.push_back({noisy_sample(centers[c], 0.05, rng), static_cast<std::int64_t>(c), 0});
  }
  LabelEngine e(config_for(32, rows.size()));
  const auto summary = build_index(e, rows);
  EXPECT_EQ(summary.searches, 4u);
  const auto s = e.stats();
  EXPECT_EQ(s.profile_count, 4u);
  EXPECT_EQ(s.indexed_vectors, 100u);
  EXPECT_TRUE(e.check_invariants().empty());
}

TEST(BuildIndex, UngroupedRowsAreSearchedOneByOne) {
  std::vector<CorpusRow> rows{{FeatureVector{1.0, 0.0}, std::nullopt, 1},
                              {FeatureVector{1.0, 0.001}, std::nullopt, 2},
                              {FeatureVector{0.0, 1.0}, std::nullopt, 3}};
  LabelEngine e(config_for(2, 3));
  const auto summary = build_index(e, rows);
  EXPECT_EQ(summary.searches, 3u);
  EXPECT_EQ(e.stats().profile_count, 2u);
  EXPECT_EQ(e.stats().indexed_vectors, 3u);
}

class ClusteredIndex : public ::testing::Test {
 protected:
  void SetUp() override {
    ClusteredCorpusSpec spec;
    spec.clusters = 16;
    spec.vectors = 2000;
    spec.dimension = 32;
    corpus = clustered_corpus(spec, 5);
    engine = std::make_unique<LabelEngine>(config_for(32, spec.vectors), 5);
    build_index(*engine, corpus.rows);
  }
  ClusteredCorpus corpus;
  std::unique_ptr<LabelEngine> engine;
};

TEST_F(ClusteredIndex, OfflineQueriesEmitRowsAndSummary) {
  std::mt19937_64 rng(6);
  std::vector<FeatureVector> qs;
  for (int i = 0; i < 200; ++i) qs.push_back(noisy_sample(corpus.centers[static_cast<std::size_t>(i) % 16], 0.1, rng));
  const auto before = engine->stats();
  const auto rows = run_queries(*engine, qs, QueryMode::kOffline);
  EXPECT_EQ(engine->stats(), before);
  std::ostringstream os;
  write_query_header(os);
  write_query_rows(os, *engine, rows);
  const auto ls = lines(os.str());
  ASSERT_EQ(ls.size(), 1u + 200u + 1u);
  EXPECT_EQ(ls.front().substr(0, 22), "scenario,structure,n,a");
  EXPECT_EQ(ls.back().substr(0, 13), "summary,tree,");
  double comparisons = 0;
  for (const auto& r : rows) comparisons += static_cast<double>(r.stats.comparisons);
  EXPECT_LT(comparisons / 200.0, 10.0);
}

TEST_F(ClusteredIndex, QueryEqualToRepReturnsItsLabel) {
  const Node* leaf = nullptr;
  for_each_node(engine->root(), [&](const Node& n, std::size_t) {
    if (!leaf && n.is_leaf()) leaf = &n;
  });
  ASSERT_NE(leaf, nullptr);
  const std::vector<FeatureVector> q{leaf->leaf().rep};
  const auto rows = run_queries(*engine, q, QueryMode::kOffline);
  EXPECT_GE(rows[0].stats.distances_computed, 1u);
  EXPECT_EQ(rows[0].label, leaf->leaf().label);
}

TEST_F(ClusteredIndex, OnlineMissesCreateProfiles) {
  std::mt19937_64 rng(7);
  const std::vector<FeatureVector> q{normalize(testing::gaussian_vector(32, rng))};
  const auto before = engine->labels_issued();
  const auto rows = run_queries(*engine, q, QueryMode::kOnline);
  EXPECT_TRUE(rows[0].created);
  EXPECT_EQ(engine->labels_issued(), before + 1);
}

TEST(Queries, ModeParsing) {
  EXPECT_EQ(parse_query_mode("online"), QueryMode::kOnline);
  EXPECT_EQ(parse_query_mode("offline"), QueryMode::kOffline);
  EXPECT_THROW(parse_query_mode("batch"), InputError);
}

TEST(Bench, RowsAndOracleCost) {
  ScalingOptions opt;
  opt.sizes = {300, 600};
  opt.clusters = 8;
  opt.queries = 20;
  opt.dimension = 16;
  const auto rows = bench_scaling(opt);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.n, r.tree.indexed_vectors);
    if (r.structure == "oracle") EXPECT_EQ(r.avg_distances, static_cast<double>(r.n));
    else EXPECT_LT(r.avg_distances, static_cast<double>(r.n));
  }
  EXPECT_EQ(rows[0].n, 300u);
  EXPECT_EQ(rows[2].n, 600u);
}

TEST(Bench, ParseSizes) {
  EXPECT_EQ(parse_sizes("1k,4k,16000"), (std::vector<std::size_t>{1000, 4000, 16000}));
  EXPECT_EQ(parse_sizes("2m"), (std::vector<std::size_t>{2000000}));
  EXPECT_THROW(parse_sizes("1k,,2k"), InputError);
  EXPECT_THROW(parse_sizes("abc"), InputError);
  EXPECT_THROW(parse_sizes("0"), InputError);
}

TEST(Corpus, ClusteredCorpusShape) {
  ClusteredCorpusSpec spec;
  spec.clusters = 8;
  spec.vectors = 100;
  spec.dimension = 16;
  spec.track_length = 16;
  const auto c = clustered_corpus(spec, 1);
  EXPECT_EQ(c.rows.size(), 100u);
  EXPECT_EQ(c.rows.back().group, 6);  // 6 full groups then a partial one
  for (std::size_t i = 0; i < c.rows.size(); ++i)
    EXPECT_LT(distance(c.rows[i].vector, c.centers[c.cluster_of_row[i]], spec.metric), 0.01);
}

TEST(TrackScenario, DeterministicReport) {
  TrackRunOptions opt;
  opt.scene.objects = 4;
  opt.scene.frames = 100;
  opt.scene.reentries = 1;
  auto render = [&] {
    std::ostringstream report, tracks;
    write_track_report(report, tracks, run_track_scenario(opt));
    return report.str() + tracks.str();
  };
  EXPECT_EQ(render(), render());
}

TEST(TrackScenario, TwoObjectReEntry) {
  TrackRunOptions opt;
  opt.scene.objects = 2;
  opt.scene.frames = 150;
  opt.scene.schedule = {{1, 40, 100}};
  const auto with_index = run_track_scenario(opt);
  EXPECT_EQ(with_index.mot.id_sw, 0u);
  EXPECT_EQ(with_index.labels_created, 2u);
  opt.naive = true;
  const auto naive = run_track_scenario(opt);
  EXPECT_GT(naive.mot.id_sw, with_index.mot.id_sw);
  EXPECT_GE(naive.mot.id_sw, naive.reentries);
  EXPECT_FALSE(naive.tree.has_value());
}

TEST(TrackScenario, InfeasibleSceneRejected) {
  TrackRunOptions opt;
  opt.scene.noise = 0.5;
  opt.scene.separation = 0.5;
  EXPECT_THROW(run_track_scenario(opt), InvalidScene);
}

}  // namespace
}  // namespace bccf
