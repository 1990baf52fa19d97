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

#include "bccf/workflow.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "bccf/errors.hpp"
#include "bccf/oracle.hpp"

namespace bccf {

namespace {

void write_tree_columns(std::ostream& out, const TreeStats& t) {
  out << t.height << ',' << t.internal_count << ',' << t.internal_profile_count << ','
      << t.leaf_count << ',' << t.profile_count << ',' << t.indexed_vectors;
}

constexpr const char* kBenchColumns =
    "scenario,structure,n,avg_distances,avg_comparisons,avg_search_time,height,internal_count,"
    "internal_profile_count,leaf_count,profile_count,indexed_vectors";

double per(double total, std::size_t count) { return count == 0 ? 0.0 : total / static_cast<double>(count); }

}  // namespace

void write_bench_header(std::ostream& out) { out << kBenchColumns << '\n'; }

void write_bench_row(std::ostream& out, const BenchRecord& r) {
  out << r.scenario << ',' << r.structure << ',' << r.n << ',' << format_double(r.avg_distances)
      << ',' << format_double(r.avg_comparisons) << ',' << format_double(r.avg_search_time) << ',';
  write_tree_columns(out, r.tree);
  out << '\n';
}

BuildSummary build_index(LabelEngine& engine, std::span<const CorpusRow> rows) {
  BuildSummary summary;
  summary.vectors = rows.size();
  std::vector<std::vector<std::size_t>> groups;
  std::unordered_map<std::int64_t, std::size_t> group_index;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].group) {
      groups.push_back({i});
      continue;
    }
    auto [it, inserted] = group_index.emplace(*rows[i].group, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  for (const auto& members : groups) {
    const LabelResult r = engine.label_search(rows[members.front()].vector);
    ++summary.searches;
    summary.search += r.stats;
    MetadataBag bag{r.label, {}, std::nullopt};
    bag.vectors.reserve(members.size());
    for (std::size_t i : members) bag.vectors.push_back(rows[i].vector);
    engine.batch_insert_at(r.leaf, bag);
  }
  return summary;
}

BenchRecord build_record(const LabelEngine& engine, const BuildSummary& summary) {
  BenchRecord r;
  r.scenario = "build";
  r.structure = "tree";
  r.tree = engine.stats();
  r.n = r.tree.indexed_vectors;
  r.avg_distances = per(static_cast<double>(summary.search.distances_computed), summary.searches);
  r.avg_comparisons = per(static_cast<double>(summary.search.comparisons), summary.searches);
  r.avg_search_time = per(summary.search.elapsed_seconds, summary.searches);
  return r;
}

QueryMode parse_query_mode(std::string_view text) {
  if (text == "online") return QueryMode::kOnline;
  if (text == "offline") return QueryMode::kOffline;
  throw InputError("unknown query mode '" + std::string(text) + "' (online|offline)");
}

std::vector<QueryRow> run_queries(LabelEngine& engine, std::span<const FeatureVector> queries,
                                  QueryMode mode) {
  std::vector<QueryRow> out;
  out.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    QueryRow row;
    row.query = i;
    if (mode == QueryMode::kOnline) {
      const auto r = engine.label_search(queries[i]);
      row.label = r.label;
      row.created = r.created;
      row.stats = r.stats;
    } else {
      const auto r = engine.lookup(queries[i]);
      row.label = r.label;
      row.stats = r.stats;
    }
    out.push_back(row);
  }
  return out;
}

void write_query_header(std::ostream& out) { out << kBenchColumns << ",query,label,created\n"; }

void write_query_rows(std::ostream& out, const LabelEngine& engine, std::span<const QueryRow> rows) {
  const TreeStats tree = engine.stats();
  SearchStats total;
  std::size_t created = 0;
  for (const auto& row : rows) {
    total += row.stats;
    created += row.created ? 1 : 0;
    BenchRecord r{"query", "tree", tree.indexed_vectors,
                  static_cast<double>(row.stats.distances_computed),
                  static_cast<double>(row.stats.comparisons), row.stats.elapsed_seconds, tree};
    std::ostringstream line;
    write_bench_row(line, r);
    std::string text = line.str();
    text.pop_back();
    out << text << ',' << row.query << ',';
    if (row.label) out << row.label->id;
    out << ',' << (row.created ? 1 : 0) << '\n';
  }
  BenchRecord summary{"summary", "tree", tree.indexed_vectors,
                      per(static_cast<double>(total.distances_computed), rows.size()),
                      per(static_cast<double>(total.comparisons), rows.size()),
                      per(total.elapsed_seconds, rows.size()), tree};
  std::ostringstream line;
  write_bench_row(line, summary);
  std::string text = line.str();
  text.pop_back();
  out << text << ',' << rows.size() << ",," << created << '\n';
}

ClusteredCorpus clustered_corpus(const ClusteredCorpusSpec& spec, std::uint64_t seed) {
  if (spec.clusters == 0 || spec.track_length == 0) {
    throw InvalidConfig("clustered corpus needs at least one cluster and a positive track length");
  }
  std::mt19937_64 rng(seed);
  ClusteredCorpus corpus;
  corpus.centers = separated_centers(spec.clusters, spec.dimension, spec.separation, spec.metric, rng);
  std::uniform_int_distribution<std::size_t> pick(0, spec.clusters - 1);
  std::int64_t group = 0;
  while (corpus.rows.size() < spec.vectors) {
    const std::size_t c = pick(rng);
    const std::size_t len = std::min(spec.track_length, spec.vectors - corpus.rows.size());
    for (std::size_t k = 0; k < len; ++k) {
      corpus.rows.push_back({noisy_sample(corpus.centers[c], spec.noise, rng), group, 0});
      corpus.cluster_of_row.push_back(c);
    }
    ++group;
  }
  return corpus;
}

std::vector<BenchRecord> bench_scaling(const ScalingOptions& o) {
  std::vector<BenchRecord> out;
  for (std::size_t n : o.sizes) {
    ClusteredCorpusSpec spec;
    spec.clusters = o.clusters;
    spec.vectors = n;
    spec.dimension = o.dimension;
    spec.noise = o.noise;
    spec.separation = o.separation;
    spec.track_length = o.track_length;
    // same seed for every size, so the centers (drawn first) are shared
    const ClusteredCorpus corpus = clustered_corpus(spec, o.seed);

    std::mt19937_64 qrng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, corpus.centers.size() - 1);
    std::vector<FeatureVector> queries;
    queries.reserve(o.queries);
    for (std::size_t i = 0; i < o.queries; ++i) {
      queries.push_back(noisy_sample(corpus.centers[pick(qrng)], o.noise, qrng));
    }

    IndexConfig cfg;
    cfg.dimension = o.dimension;
    cfg.metric = spec.metric;
    cfg.beta = o.beta;
    cfg.zeta = o.zeta;
    cfg.c_max = IndexConfig::capacity_for(n);
    LabelEngine engine(cfg, o.seed);
    build_index(engine, corpus.rows);

    const auto rows = run_queries(engine, queries, QueryMode::kOffline);
    SearchStats tree_total;
    for (const auto& r : rows) tree_total += r.stats;
    BenchRecord tree{"scaling", "tree", engine.stats().indexed_vectors,
                     per(static_cast<double>(tree_total.distances_computed), rows.size()),
                     per(static_cast<double>(tree_total.comparisons), rows.size()),
                     per(tree_total.elapsed_seconds, rows.size()), engine.stats()};
    out.push_back(tree);

    const FlatStore store = FlatStore::mirror(engine);
    SearchStats flat_total;
    for (const auto& q : queries) {
      flat_total += linear_label_search(store, canonicalize(q, cfg.metric), cfg.beta, cfg.metric).stats;
    }
    BenchRecord flat{"scaling", "oracle", store.size(),
                     per(static_cast<double>(flat_total.distances_computed), queries.size()),
                     per(static_cast<double>(flat_total.comparisons), queries.size()),
                     per(flat_total.elapsed_seconds, queries.size()), TreeStats{}};
    flat.tree.indexed_vectors = store.size();
    out.push_back(flat);
  }
  return out;
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    std::string_view tok = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw InputError("empty size in list '" + std::string(text) + "'");
    std::size_t scale = 1;
    if (tok.back() == 'k' || tok.back() == 'K') scale = 1000;
    if (tok.back() == 'm' || tok.back() == 'M') scale = 1000000;
    if (scale != 1) tok.remove_suffix(1);
    std::size_t value = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || value == 0) {
      throw InputError("bad size '" + std::string(tok) + "'");
    }
    out.push_back(value * scale);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

TrackRunReport run_track_scenario(const TrackRunOptions& options) {
  const Scene scene = generate_scene(options.scene, options.seed);
  IndexConfig cfg = options.index;
  cfg.dimension = options.scene.dimension;
  cfg.metric = options.scene.metric;
  if (options.auto_capacity) cfg.c_max = IndexConfig::capacity_for(scene.detections.size());

  TrackRunReport report;
  report.reentries = scene.reentries.size();
  if (options.naive) {
    NaiveLabelSource source;
    report.tracking = run_tracking(scene.detections, source, options.tracking);
  } else {
    LabelEngine engine(cfg, options.seed);
    EngineLabelSource source(engine);
    report.tracking = run_tracking(scene.detections, source, options.tracking);
    report.tree = engine.stats();
  }
  std::vector<std::uint64_t> labels;
  for (const auto& t : report.tracking.tracks) labels.push_back(t.label.id);
  std::sort(labels.begin(), labels.end());
  report.labels_created = static_cast<std::size_t>(std::unique(labels.begin(), labels.end()) - labels.begin());

  const auto hyps = to_hypotheses(report.tracking);
  const auto truth = to_ground_truth(scene.detections);
  report.mot = compute_mot_metrics(hyps, truth);
  return report;
}

void write_track_report(std::ostream& out, std::ostream& tracks, const TrackRunReport& run) {
  write_mot_header(out);
  out << ",labels_created,label_searches,tracks,reentries\n";
  write_mot_row(out, run.mot);
  out << ',' << run.labels_created << ',' << run.tracking.label_searches << ','
      << run.tracking.tracks.size() << ',' << run.reentries << '\n';

  // majority truth id per track, for eyeballing re-identification
  std::map<int, std::map<int, std::size_t>> votes;
  for (const auto& r : run.tracking.records) {
    if (r.truth_id >= 0) ++votes[r.track_id][r.truth_id];
  }
  tracks << "track_id,camera,label,first_frame,last_frame,bag_size,truth_id\n";
  for (const auto& t : run.tracking.tracks) {
    int truth = -1;
    std::size_t best = 0;
    for (const auto& [id, count] : votes[t.track_id]) {
      if (count > best) {
        best = count;
        truth = id;
      }
    }
    tracks << t.track_id << ',' << t.camera << ',' << t.label.id << ',' << t.first_frame << ','
           << t.last_frame << ',' << t.bag_size << ',' << truth << '\n';
  }
}

}  // namespace bccf
