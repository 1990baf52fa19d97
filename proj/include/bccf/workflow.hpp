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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bccf/engine.hpp"
#include "bccf/io.hpp"
#include "bccf/tracking.hpp"

namespace bccf {

struct BenchRecord {
  std::string scenario;
  std::string structure;  // "tree" or "oracle"
  std::size_t n = 0;
  double avg_distances = 0.0;
  double avg_comparisons = 0.0;
  double avg_search_time = 0.0;
  TreeStats tree;
};

void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRecord& record);

struct BuildSummary {
  std::size_t vectors = 0;
  std::size_t searches = 0;
  SearchStats search;  // summed over the label searches
};

// Rows sharing a group id form one bag: the first row of each group is
// label-searched, then the whole group is batch-inserted under the returned
// label, group by group in order of first appearance. Ungrouped rows are
// searched and inserted one at a time.
BuildSummary build_index(LabelEngine& engine, std::span<const CorpusRow> rows);

BenchRecord build_record(const LabelEngine& engine, const BuildSummary& summary);

enum class QueryMode { kOnline, kOffline };
QueryMode parse_query_mode(std::string_view text);

struct QueryRow {
  std::size_t query = 0;
  std::optional<ProfileLabel> label;
  bool created = false;
  SearchStats stats;
};

// Online queries go through label_search (misses create profiles); offline
// queries are read-only lookups.
std::vector<QueryRow> run_queries(LabelEngine& engine, std::span<const FeatureVector> queries,
                                  QueryMode mode);

void write_query_header(std::ostream& out);
void write_query_rows(std::ostream& out, const LabelEngine& engine,
                      std::span<const QueryRow> rows);

struct ClusteredCorpusSpec {
  std::size_t clusters = 256;
  std::size_t vectors = 1000;
  std::size_t dimension = 128;
  MetricKind metric = MetricKind::kCosine;
  double noise = 0.1;
  double separation = 0.8;
  std::size_t track_length = 16;  // vectors per group
};

struct ClusteredCorpus {
  std::vector<FeatureVector> centers;
  std::vector<CorpusRow> rows;
  std::vector<std::size_t> cluster_of_row;
};

// Groups of `track_length` noisy samples of a uniformly chosen center.
ClusteredCorpus clustered_corpus(const ClusteredCorpusSpec& spec, std::uint64_t seed);

struct ScalingOptions {
  std::vector<std::size_t> sizes{1000, 4000, 16000, 64000};
  std::size_t clusters = 256;
  std::size_t queries = 200;
  std::size_t dimension = 128;
  double noise = 0.1;
  double separation = 0.8;
  double beta = 0.2;
  double zeta = 0.6;
  std::size_t track_length = 16;
  std::uint64_t seed = 42;
};

// For each size: builds the tree (c_max = ceil(sqrt(n))), runs a fixed set of
// offline queries against the tree and against the sequential scan, and returns
// one tree row and one oracle row per size.
std::vector<BenchRecord> bench_scaling(const ScalingOptions& options);

// "1k,4k,16000" -> {1000, 4000, 16000}.
std::vector<std::size_t> parse_sizes(std::string_view text);

struct TrackRunOptions {
  SceneSpec scene;
  TrackingConfig tracking;
  IndexConfig index;
  bool auto_capacity = true;  // c_max = ceil(sqrt(#detections))
  bool naive = false;
  std::uint64_t seed = 42;
};

struct TrackRunReport {
  MotReport mot;
  TrackingResult tracking;
  std::size_t labels_created = 0;
  std::size_t reentries = 0;
  std::optional<TreeStats> tree;
};

TrackRunReport run_track_scenario(const TrackRunOptions& options);

// report CSV plus per-track label assignments
void write_track_report(std::ostream& report, std::ostream& tracks, const TrackRunReport& run);

}  // namespace bccf
