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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bccf/engine.hpp"
#include "bccf/errors.hpp"
#include "bccf/workflow.hpp"

namespace py = pybind11;
using namespace bccf;

namespace {

FeatureVector to_vector(const std::vector<double>& v) { return FeatureVector(v); }

std::string placement_name(Placement p) {
  switch (p) {
    case Placement::kRoot: return "root";
    case Placement::kDown: return "down";
    case Placement::kUp: return "up";
    case Placement::kNone: break;
  }
  return "none";
}

py::dict search_dict(const SearchStats& s) {
  py::dict d;
  d["distances"] = s.distances_computed;
  d["comparisons"] = s.comparisons;
  d["seconds"] = s.elapsed_seconds;
  return d;
}

py::dict tree_dict(const TreeStats& s) {
  py::dict d;
  d["height"] = s.height;
  d["internal_count"] = s.internal_count;
  d["internal_profile_count"] = s.internal_profile_count;
  d["leaf_count"] = s.leaf_count;
  d["profile_count"] = s.profile_count;
  d["indexed_vectors"] = s.indexed_vectors;
  return d;
}

py::dict mot_dict(const MotReport& r) {
  py::dict d;
  d["id_sw"] = r.id_sw;
  d["frag"] = r.frag;
  d["fp"] = r.fp;
  d["fn"] = r.fn;
  d["gt"] = r.gt;
  d["matches"] = r.matches;
  d["mt"] = r.mt;
  d["ml"] = r.ml;
  d["mota"] = r.mota;
  d["motp"] = r.motp;
  return d;
}

class PyEngine {
 public:
  PyEngine(std::size_t dimension, const std::string& metric, double beta, double zeta,
           std::size_t c_max, std::uint64_t seed)
      : engine_(make_config(dimension, metric, beta, zeta, c_max), seed) {}

  py::dict label_search(const std::vector<double>& q) {
    const auto r = engine_.label_search(to_vector(q));
    py::dict d;
    d["label"] = r.label.id;
    d["created"] = r.created;
    d["placement"] = placement_name(r.placement);
    d["rep_distance"] = r.rep_distance;
    d["stats"] = search_dict(r.stats);
    return d;
  }

  py::dict lookup(const std::vector<double>& q) const {
    const auto r = engine_.lookup(to_vector(q));
    py::dict d;
    d["label"] = r.label ? py::cast(r.label->id) : py::none();
    d["rep_distance"] = r.rep_distance;
    d["depth"] = r.leaf_depth;
    d["stats"] = search_dict(r.stats);
    return d;
  }

  void batch_insert(std::uint64_t label, const std::vector<std::vector<double>>& vectors) {
    MetadataBag bag;
    bag.label = ProfileLabel{label};
    for (const auto& v : vectors) bag.vectors.push_back(to_vector(v));
    engine_.batch_insert(bag);
  }

  py::dict stats() const { return tree_dict(engine_.stats()); }
  std::vector<std::string> check_invariants() const { return engine_.check_invariants(); }
  std::uint64_t labels_issued() const { return engine_.labels_issued(); }

  std::string snapshot() const {
    std::ostringstream out;
    engine_.write_snapshot(out);
    return out.str();
  }

 private:
  static IndexConfig make_config(std::size_t dimension, const std::string& metric, double beta,
                                 double zeta, std::size_t c_max) {
    IndexConfig cfg;
    cfg.dimension = dimension;
    cfg.metric = parse_metric(metric);
    cfg.beta = beta;
    cfg.zeta = zeta;
    cfg.c_max = c_max;
    cfg.validate();
    return cfg;
  }

  LabelEngine engine_;
};

}  // namespace

PYBIND11_MODULE(_bccf, m) {
  m.doc() = "Adaptive BCCF-tree label index";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error.ptr());
  py::register_exception<InvalidConfig>(m, "InvalidConfig", error.ptr());
  py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<InvalidScene>(m, "InvalidScene", error.ptr());

  m.def("distance", [](const std::vector<double>& a, const std::vector<double>& b,
                       const std::string& metric) {
    return distance(to_vector(a), to_vector(b), parse_metric(metric));
  }, py::arg("a"), py::arg("b"), py::arg("metric") = "cosine");

  m.def("capacity_for", &IndexConfig::capacity_for, py::arg("n"));

  py::class_<PyEngine>(m, "Engine")
      .def(py::init<std::size_t, const std::string&, double, double, std::size_t, std::uint64_t>(),
           py::arg("dimension") = 128, py::arg("metric") = "cosine", py::arg("beta") = 0.2,
           py::arg("zeta") = 0.6, py::arg("c_max") = 892, py::arg("seed") = 42)
      .def("label_search", &PyEngine::label_search, py::arg("query"))
      .def("lookup", &PyEngine::lookup, py::arg("query"))
      .def("batch_insert", &PyEngine::batch_insert, py::arg("label"), py::arg("vectors"))
      .def("stats", &PyEngine::stats)
      .def("check_invariants", &PyEngine::check_invariants)
      .def("snapshot", &PyEngine::snapshot)
      .def_property_readonly("labels_issued", &PyEngine::labels_issued);

  m.def("bench_scaling", [](const std::vector<std::size_t>& sizes, std::size_t clusters,
                            std::size_t queries, std::size_t dimension, std::uint64_t seed) {
    ScalingOptions opt;
    opt.sizes = sizes;
    opt.clusters = clusters;
    opt.queries = queries;
    opt.dimension = dimension;
    opt.seed = seed;
    py::list rows;
    for (const auto& r : bench_scaling(opt)) {
      py::dict d;
      d["structure"] = r.structure;
      d["n"] = r.n;
      d["avg_distances"] = r.avg_distances;
      d["avg_comparisons"] = r.avg_comparisons;
      d["avg_search_time"] = r.avg_search_time;
      d["tree"] = tree_dict(r.tree);
      rows.append(d);
    }
    return rows;
  }, py::arg("sizes"), py::arg("clusters") = 256, py::arg("queries") = 200,
     py::arg("dimension") = 128, py::arg("seed") = 42);

  m.def("track_run", [](int objects, int frames, int reentries, std::uint64_t seed, bool naive) {
    TrackRunOptions opt;
    opt.scene.objects = objects;
    opt.scene.frames = frames;
    opt.scene.reentries = reentries;
    opt.seed = seed;
    opt.naive = naive;
    const auto run = run_track_scenario(opt);
    py::dict d = mot_dict(run.mot);
    d["labels_created"] = run.labels_created;
    d["label_searches"] = run.tracking.label_searches;
    d["tracks"] = run.tracking.tracks.size();
    d["reentries"] = run.reentries;
    return d;
  }, py::arg("objects") = 10, py::arg("frames") = 200, py::arg("reentries") = 3,
     py::arg("seed") = 42, py::arg("naive") = false);
}
