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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bccf/config.hpp"
#include "bccf/engine.hpp"

namespace bccf {

// Sequential-scan labeler over every stored (vector, label) pair.
class FlatStore {
 public:
  struct Entry {
    FeatureVector vector;
    ProfileLabel label;
  };

  void add(FeatureVector v, ProfileLabel label) { entries_.push_back({std::move(v), label}); }
  void add_bag(const MetadataBag& bag);
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  // Copies every pair currently stored in the engine's leaf containers.
  static FlatStore mirror(const LabelEngine& engine);

 private:
  std::vector<Entry> entries_;
};

struct LinearResult {
  std::optional<ProfileLabel> label;      // set iff nearest distance < beta
  std::optional<std::size_t> nearest;     // index of the nearest entry
  double nearest_distance = 0.0;
  SearchStats stats;
};

// Ties resolve to the earliest entry.
LinearResult linear_label_search(const FlatStore& store, const FeatureVector& query, double beta,
                                 MetricKind metric);

struct AgreementReport {
  double agreement = 0.0;
  std::size_t queries = 0;
  std::size_t agreed = 0;
  double tree_mean_distances = 0.0;
  double oracle_mean_distances = 0.0;
};

// Fraction of queries where the tree lookup and the scan return the same
// label-or-none verdict. Throws InconsistentBaseline if the store does not hold
// exactly as many vectors as the tree.
AgreementReport agreement(const LabelEngine& engine, const FlatStore& store,
                          std::span<const FeatureVector> queries);

}  // namespace bccf
