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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bccf/config.hpp"
#include "bccf/metric.hpp"
#include "bccf/tree.hpp"

namespace bccf {

struct SearchStats {
  std::uint64_t distances_computed = 0;
  std::uint64_t comparisons = 0;
  double elapsed_seconds = 0.0;

  SearchStats& operator+=(const SearchStats& o) {
    distances_computed += o.distances_computed;
    comparisons += o.comparisons;
    elapsed_seconds += o.elapsed_seconds;
    return *this;
  }
};

enum class Placement { kNone, kRoot, kDown, kUp };

struct LabelResult {
  ProfileLabel label;
  // Leaf holding the profile; stays valid until the next mutation of the engine.
  const Node* leaf = nullptr;
  bool created = false;
  Placement placement = Placement::kNone;
  SearchStats stats;
  // Distance to the representative of the reached leaf (infinity on an empty tree).
  double rep_distance = 0.0;
};

struct LookupResult {
  std::optional<ProfileLabel> label;
  const Node* leaf = nullptr;
  double rep_distance = 0.0;
  std::size_t leaf_depth = 0;
  SearchStats stats;
};

// Monotone, never-reused label source. Safe to share between threads.
class LabelAllocator {
 public:
  ProfileLabel next() noexcept { return ProfileLabel{next_.fetch_add(1, std::memory_order_relaxed)}; }
  std::uint64_t issued() const noexcept { return next_.load(std::memory_order_relaxed) - 1; }

 private:
  std::atomic<std::uint64_t> next_{1};
};

// Splices Internal(q, target.rep) above the profile node held in `slot`, with a
// fresh leaf for q on the left. Returns the new leaf.
Node& down_insert(NodePtr& slot, const FeatureVector& q, ProfileLabel label, MetricKind metric);

struct RootDistances {
  double to_p1;
  double to_p2;
};

// Places a new root above the current one (which must have pivots). When q is at
// least as close to p1 as to p2 the root becomes (q, p1) with the new leaf on the
// left, otherwise (p2, q) with the new leaf on the right. Root distances are
// computed (and counted) unless supplied.
Node& up_insert(NodePtr& root_slot, const FeatureVector& q, ProfileLabel label, MetricKind metric,
                std::optional<RootDistances> known = std::nullopt,
                std::uint64_t* distance_counter = nullptr);

struct BagSource {
  int camera = 0;
  int first_frame = 0;
  int last_frame = 0;
};

struct MetadataBag {
  ProfileLabel label;
  std::vector<FeatureVector> vectors;
  std::optional<BagSource> source;
};

// Cumulative construction counters.
struct EngineCounters {
  std::uint64_t searches = 0;
  std::uint64_t labels_created = 0;
  std::uint64_t down_inserts = 0;
  std::uint64_t up_inserts = 0;
  std::uint64_t up_fallbacks = 0;  // up insertions replaced by down insertion
  std::uint64_t batch_inserts = 0;
  std::uint64_t splits = 0;
  std::uint64_t degenerate_leaves = 0;
  std::uint64_t distances = 0;
  std::uint64_t comparisons = 0;
  double search_seconds = 0.0;
};

// Label index: greedy threshold search over the tree, down/up placement of new
// profiles and batch insertion of tracked metadata.
//
// Mutating calls (label_search, batch_insert*) take an exclusive lock; lookup
// takes a shared one, so read-only queries may run concurrently between
// mutations. Raw node pointers handed out are invalidated by the next mutation.
class LabelEngine {
 public:
  explicit LabelEngine(IndexConfig config, std::uint64_t seed = 42);

  const IndexConfig& config() const noexcept { return config_; }

  // Queries are normalized under the cosine metric. Throws DimensionMismatch,
  // NonFiniteValue or DegenerateVector on bad input.
  LabelResult label_search(const FeatureVector& query);

  // Read-only variant: never allocates labels or mutates the tree.
  LookupResult lookup(const FeatureVector& query) const;

  // Adds the bag to its profile, routing to a leaf of the profile subtree by the
  // bag centroid. Throws MisdirectedBag for labels without a profile.
  void batch_insert(const MetadataBag& bag);

  // Same, starting from `node`, which must belong to the bag's profile.
  void batch_insert_at(const Node* node, const MetadataBag& bag);

  TreeStats stats() const;
  EngineCounters counters() const;
  std::vector<std::string> check_invariants() const;
  void write_snapshot(std::ostream& out) const;

  // Stored (vector, label) pairs in preorder.
  std::vector<std::pair<FeatureVector, ProfileLabel>> entries() const;

  const Node* root() const noexcept { return root_.get(); }
  const Node* profile_root(ProfileLabel label) const;
  std::uint64_t labels_issued() const noexcept { return labels_.issued(); }

 private:
  struct Descent {
    std::vector<NodePtr*> slots;  // root slot first, reached leaf last
    NodePtr* profile_slot = nullptr;
    std::optional<RootDistances> root_distances;
  };

  FeatureVector prepare(const FeatureVector& v) const;
  static NodePtr* descend_slots(NodePtr& from, const FeatureVector& q, MetricKind metric,
                                Descent& descent, SearchStats& stats);
  void insert_into_leaf(Node& leaf, std::vector<FeatureVector> vectors);
  void split_leaf(Node& leaf, std::vector<FeatureVector> pool);

  IndexConfig config_;
  std::uint64_t seed_;
  NodePtr root_;
  LabelAllocator labels_;
  std::unordered_map<ProfileLabel, Node*> profiles_;
  EngineCounters counters_;
  std::uint64_t split_sequence_ = 0;
  mutable std::shared_mutex mutex_;
};

}  // namespace bccf
