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

#include "bccf/oracle.hpp"

#include <chrono>
#include <limits>

namespace bccf {

void FlatStore::add_bag(const MetadataBag& bag) {
  for (const auto& v : bag.vectors) add(v, bag.label);
}

FlatStore FlatStore::mirror(const LabelEngine& engine) {
  FlatStore store;
  for (auto& [v, label] : engine.entries()) store.add(v, label);
  return store;
}

LinearResult linear_label_search(const FlatStore& store, const FeatureVector& query, double beta,
                                 MetricKind metric) {
  const auto start = std::chrono::steady_clock::now();
  LinearResult result;
  result.nearest_distance = std::numeric_limits<double>::infinity();
  const auto& entries = store.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double d = distance(entries[i].vector, query, metric, result.stats.distances_computed);
    ++result.stats.comparisons;
    if (d < result.nearest_distance) {
      result.nearest_distance = d;
      result.nearest = i;
    }
  }
  if (result.nearest && result.nearest_distance < beta) {
    result.label = entries[*result.nearest].label;
  }
  result.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

AgreementReport agreement(const LabelEngine& engine, const FlatStore& store,
                          std::span<const FeatureVector> queries) {
  const auto indexed = engine.stats().indexed_vectors;
  if (indexed != store.size()) {
    throw InconsistentBaseline("store holds " + std::to_string(store.size()) +
                               " vectors, tree holds " + std::to_string(indexed));
  }
  AgreementReport report;
  report.queries = queries.size();
  double tree_total = 0.0;
  double oracle_total = 0.0;
  const auto& cfg = engine.config();
  for (const auto& q : queries) {
    const auto tree = engine.lookup(q);
    const auto flat = linear_label_search(store, canonicalize(q, cfg.metric), cfg.beta, cfg.metric);
    tree_total += static_cast<double>(tree.stats.distances_computed);
    oracle_total += static_cast<double>(flat.stats.distances_computed);
    if (tree.label == flat.label) ++report.agreed;
  }
  if (!queries.empty()) {
    const auto n = static_cast<double>(queries.size());
    report.agreement = static_cast<double>(report.agreed) / n;
    report.tree_mean_distances = tree_total / n;
    report.oracle_mean_distances = oracle_total / n;
  }
  return report;
}

}  // namespace bccf
