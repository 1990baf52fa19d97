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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bccf/errors.hpp"
#include "bccf/io.hpp"
#include "bccf/workflow.hpp"

namespace {

using namespace bccf;

constexpr int kInputError = 1;
constexpr int kInvariantError = 2;

struct IndexFlags {
  std::optional<std::string> config;
  std::optional<std::size_t> dimension;
  std::optional<std::string> metric;
  std::optional<double> beta;
  std::optional<double> zeta;
  std::optional<std::size_t> c_max;
  std::uint64_t seed = 42;
};

void add_index_flags(CLI::App& cmd, IndexFlags& f) {
  cmd.add_option("--config", f.config, "key=value config file");
  cmd.add_option("--dimension", f.dimension, "feature dimension (default: from input)");
  cmd.add_option("--metric", f.metric, "cosine or euclidean");
  cmd.add_option("--beta", f.beta, "match threshold");
  cmd.add_option("--zeta", f.zeta, "placement threshold");
  cmd.add_option("--c-max", f.c_max, "leaf capacity (default: ceil(sqrt(n)))");
  cmd.add_option("--seed", f.seed, "partition seed");
}

KeyValues read_config_file(const std::optional<std::string>& path) {
  if (!path) return {};
  std::ifstream in(*path);
  if (!in) throw InputError("cannot open config '" + *path + "'");
  return read_key_values(in);
}

// flags > config file > defaults. c_max falls back to ceil(sqrt(n)).
IndexConfig resolve_index_config(const IndexFlags& f, const KeyValues& file, std::size_t n,
                                 std::size_t input_dimension) {
  IndexConfig cfg = apply_index_config(IndexConfig{}, file);
  KeyValues flags;
  if (f.dimension) flags["dimension"] = std::to_string(*f.dimension);
  if (f.metric) flags["metric"] = *f.metric;
  if (f.beta) flags["beta"] = format_double(*f.beta);
  if (f.zeta) flags["zeta"] = format_double(*f.zeta);
  if (f.c_max) flags["c_max"] = std::to_string(*f.c_max);
  cfg = apply_index_config(cfg, flags);
  if (!f.dimension && !file.count("dimension") && input_dimension > 0) cfg.dimension = input_dimension;
  if (!f.c_max && !file.count("c_max")) cfg.c_max = IndexConfig::capacity_for(n);
  try {
    cfg.validate();
  } catch (const InvalidConfig& e) {
    throw InputError(e.what());
  }
  return cfg;
}

std::optional<std::size_t> pinned_dimension(const IndexFlags& f, const KeyValues& file) {
  if (f.dimension) return f.dimension;
  if (file.count("dimension")) return apply_index_config(IndexConfig{}, file).dimension;
  return std::nullopt;
}

Corpus load_corpus(const std::string& path, std::optional<std::size_t> dim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input '" + path + "'");
  return read_corpus(in, dim);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

void verify(const LabelEngine& engine) {
  const auto problems = engine.check_invariants();
  if (!problems.empty()) throw StructuralError("invariant violated: " + problems.front());
  std::stringstream snap;
  engine.write_snapshot(snap);
  if (!(snapshot_stats(snap) == engine.stats())) {
    throw StructuralError("snapshot stats differ from the live tree");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"BCCF-tree label index"};
  app.require_subcommand(1);

  auto* index = app.add_subcommand("index", "build and query a label index");
  index->require_subcommand(1);

  IndexFlags build_flags;
  std::string build_input, build_out = "bccf_index";
  auto* build = index->add_subcommand("build", "build an index from a corpus");
  build->add_option("--input", build_input, "detection or feature CSV")->required();
  build->add_option("--out", build_out, "output prefix for <prefix>.stats.csv and <prefix>.snapshot");
  add_index_flags(*build, build_flags);

  IndexFlags query_flags;
  std::string query_index, query_input, query_mode = "offline", query_out = "-";
  auto* query = index->add_subcommand("query", "query an index rebuilt from its corpus");
  query->add_option("--index", query_index, "corpus the index is built from")->required();
  query->add_option("--input", query_input, "query feature CSV")->required();
  query->add_option("--mode", query_mode, "online or offline");
  query->add_option("--out", query_out, "query CSV ('-' for stdout)");
  add_index_flags(*query, query_flags);

  std::string snapshot_path;
  auto* stats = index->add_subcommand("stats", "tree statistics of a snapshot");
  stats->add_option("--snapshot", snapshot_path, "snapshot file")->required();

  auto* bench = app.add_subcommand("bench", "benchmarks");
  bench->require_subcommand(1);
  ScalingOptions scaling;
  std::string sizes = "1k,4k,16k,64k", bench_out = "-";
  auto* bench_scale = bench->add_subcommand("scaling", "tree vs linear scan over corpus sizes");
  bench_scale->add_option("--sizes", sizes, "comma separated sizes, k/m suffixes allowed");
  bench_scale->add_option("--seed", scaling.seed);
  bench_scale->add_option("--clusters", scaling.clusters);
  bench_scale->add_option("--queries", scaling.queries);
  bench_scale->add_option("--dimension", scaling.dimension);
  bench_scale->add_option("--noise", scaling.noise);
  bench_scale->add_option("--separation", scaling.separation);
  bench_scale->add_option("--beta", scaling.beta);
  bench_scale->add_option("--zeta", scaling.zeta);
  bench_scale->add_option("--track-length", scaling.track_length);
  bench_scale->add_option("--out", bench_out, "CSV ('-' for stdout)");

  auto* track = app.add_subcommand("track", "tracking scenarios");
  track->require_subcommand(1);
  std::optional<std::string> scene_path;
  std::string track_out = "-", tracks_out, baseline = "engine";
  std::optional<int> objects, frames, reentries, gap, confirm_after, max_missed;
  std::optional<double> noise, separation, beta, zeta;
  std::optional<std::size_t> c_max, dimension;
  std::uint64_t track_seed = 42;
  auto* track_run = track->add_subcommand("run", "synthetic scene through the tracking workflow");
  track_run->add_option("--scene", scene_path, "key=value scene description");
  track_run->add_option("--out", track_out, "MOT report CSV ('-' for stdout)");
  track_run->add_option("--tracks", tracks_out, "per-track label CSV");
  track_run->add_option("--baseline", baseline, "engine or naive")
      ->check(CLI::IsMember({"engine", "naive"}));
  track_run->add_option("--seed", track_seed);
  track_run->add_option("--objects", objects);
  track_run->add_option("--frames", frames);
  track_run->add_option("--reentries", reentries);
  track_run->add_option("--gap", gap);
  track_run->add_option("--noise", noise);
  track_run->add_option("--separation", separation);
  track_run->add_option("--dimension", dimension);
  track_run->add_option("--beta", beta);
  track_run->add_option("--zeta", zeta);
  track_run->add_option("--c-max", c_max);
  track_run->add_option("--confirm-after", confirm_after);
  track_run->add_option("--max-missed", max_missed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  if (build->parsed()) {
    const KeyValues file = read_config_file(build_flags.config);
    const Corpus corpus = load_corpus(build_input, pinned_dimension(build_flags, file));
    const IndexConfig cfg = resolve_index_config(build_flags, file, corpus.rows.size(), corpus.dimension);
    LabelEngine engine(cfg, build_flags.seed);
    const BuildSummary summary = build_index(engine, corpus.rows);
    verify(engine);
    auto stats_os = open_output(build_out + ".stats.csv");
    write_bench_header(stats_os);
    write_bench_row(stats_os, build_record(engine, summary));
    auto snap_os = open_output(build_out + ".snapshot");
    engine.write_snapshot(snap_os);
    return 0;
  }

  if (query->parsed()) {
    const QueryMode mode = parse_query_mode(query_mode);
    const KeyValues file = read_config_file(query_flags.config);
    const Corpus corpus = load_corpus(query_index, pinned_dimension(query_flags, file));
    if (corpus.rows.empty()) throw InputError("index corpus '" + query_index + "' is empty");
    const IndexConfig cfg = resolve_index_config(query_flags, file, corpus.rows.size(), corpus.dimension);
    LabelEngine engine(cfg, query_flags.seed);
    build_index(engine, corpus.rows);
    const Corpus queries = load_corpus(query_input, cfg.dimension);
    std::vector<FeatureVector> vectors;
    for (const auto& r : queries.rows) vectors.push_back(r.vector);
    const auto rows = run_queries(engine, vectors, mode);
    verify(engine);
    if (query_out == "-") {
      write_query_header(std::cout);
      write_query_rows(std::cout, engine, rows);
    } else {
      auto os = open_output(query_out);
      write_query_header(os);
      write_query_rows(os, engine, rows);
    }
    return 0;
  }

  if (stats->parsed()) {
    std::ifstream in(snapshot_path);
    if (!in) throw InputError("cannot open snapshot '" + snapshot_path + "'");
    BenchRecord r;
    r.scenario = "snapshot";
    r.structure = "tree";
    r.tree = snapshot_stats(in);
    r.n = r.tree.indexed_vectors;
    write_bench_header(std::cout);
    write_bench_row(std::cout, r);
    return 0;
  }

  if (bench_scale->parsed()) {
    scaling.sizes = parse_sizes(sizes);
    const auto records = bench_scaling(scaling);
    auto emit = [&](std::ostream& os) {
      write_bench_header(os);
      for (const auto& r : records) write_bench_row(os, r);
    };
    if (bench_out == "-") {
      emit(std::cout);
    } else {
      auto os = open_output(bench_out);
      emit(os);
    }
    return 0;
  }

  if (track_run->parsed()) {
    const KeyValues file = read_config_file(scene_path);
    TrackRunOptions opt;
    opt.seed = track_seed;
    opt.naive = baseline == "naive";
    opt.scene = apply_scene_spec(SceneSpec{}, file);
    if (objects) opt.scene.objects = *objects;
    if (frames) opt.scene.frames = *frames;
    if (reentries) opt.scene.reentries = *reentries;
    if (gap) opt.scene.gap = *gap;
    if (noise) opt.scene.noise = *noise;
    if (separation) opt.scene.separation = *separation;
    if (dimension) opt.scene.dimension = *dimension;
    opt.index = apply_index_config(IndexConfig{}, file);
    if (beta) opt.index.beta = *beta;
    if (zeta) opt.index.zeta = *zeta;
    opt.auto_capacity = !c_max && !file.count("c_max");
    if (c_max) opt.index.c_max = *c_max;
    if (confirm_after) opt.tracking.confirm_after = *confirm_after;
    if (max_missed) opt.tracking.max_missed = *max_missed;
    try {
      opt.scene.validate();
    } catch (const InvalidScene& e) {
      throw InputError(e.what());
    }
    const TrackRunReport report = run_track_scenario(opt);
    std::ostringstream tracks_csv;
    if (track_out == "-") {
      write_track_report(std::cout, tracks_csv, report);
    } else {
      auto os = open_output(track_out);
      write_track_report(os, tracks_csv, report);
    }
    if (!tracks_out.empty()) {
      auto os = open_output(tracks_out);
      os << tracks_csv.str();
    }
    return 0;
  }
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bccf::StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariantError;
  } catch (const bccf::InconsistentBaseline& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariantError;
  } catch (const bccf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariantError;
  }
}
