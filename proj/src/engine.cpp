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

#include "bccf/engine.hpp"

#include <chrono>
#include <limits>
#include <mutex>

#include "bccf/partition.hpp"

namespace bccf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t sequence) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (sequence + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Node& down_insert(NodePtr& slot, const FeatureVector& q, ProfileLabel label, MetricKind metric) {
  if (!slot) throw StructuralError("down insertion into an empty slot");
  const FeatureVector* rep = slot->rep();
  if (!rep) throw StructuralError("down insertion target must be a profile node");
  NodePtr leaf = new_leaf_profile(q, label);
  Node& placed = *leaf;
  NodePtr splice = new_splice_internal(q, *rep, std::move(leaf), Side::kLeft, metric);
  pointer_switch(slot, std::move(splice));
  return placed;
}

Node& up_insert(NodePtr& root_slot, const FeatureVector& q, ProfileLabel label, MetricKind metric,
                std::optional<RootDistances> known, std::uint64_t* distance_counter) {
  if (!root_slot || root_slot->is_leaf()) {
    throw StructuralError("up insertion needs a root with pivots");
  }
  const Node& root = *root_slot;
  RootDistances rd{};
  if (known) {
    rd = *known;
  } else {
    std::uint64_t local = 0;
    std::uint64_t& counter = distance_counter ? *distance_counter : local;
    rd.to_p1 = distance(root.p1(), q, metric, counter);
    rd.to_p2 = distance(root.p2(), q, metric, counter);
  }
  NodePtr leaf = new_leaf_profile(q, label);
  Node& placed = *leaf;
  NodePtr splice = rd.to_p1 <= rd.to_p2
                       ? new_splice_internal(q, root.p1(), std::move(leaf), Side::kLeft, metric)
                       : new_splice_internal(root.p2(), q, std::move(leaf), Side::kRight, metric);
  pointer_switch(root_slot, std::move(splice));
  return placed;
}

LabelEngine::LabelEngine(IndexConfig config, std::uint64_t seed) : config_(config), seed_(seed) {
  config_.validate();
}

FeatureVector LabelEngine::prepare(const FeatureVector& v) const {
  if (v.size() != config_.dimension) throw DimensionMismatch(config_.dimension, v.size());
  return canonicalize(v, config_.metric);
}

NodePtr* LabelEngine::descend_slots(NodePtr& from, const FeatureVector& q, MetricKind metric,
                                    Descent& descent, SearchStats& stats) {
  NodePtr* slot = &from;
  descent.slots.push_back(slot);
  while ((*slot)->has_pivots()) {
    Node& n = **slot;
    if (!descent.profile_slot && n.label()) descent.profile_slot = slot;
    const double d1 = distance(n.p1(), q, metric, stats.distances_computed);
    const double d2 = distance(n.p2(), q, metric, stats.distances_computed);
    if (!descent.root_distances) descent.root_distances = RootDistances{d1, d2};
    ++stats.comparisons;
    slot = d1 < d2 ? &n.left() : &n.right();
    descent.slots.push_back(slot);
  }
  if (!descent.profile_slot) descent.profile_slot = slot;
  return slot;
}

LabelResult LabelEngine::label_search(const FeatureVector& query) {
  const auto start = Clock::now();
  const FeatureVector q = prepare(query);
  const MetricKind metric = config_.metric;

  std::unique_lock lock(mutex_);
  ++counters_.searches;
  LabelResult result;

  if (!root_) {
    result.label = labels_.next();
    root_ = new_leaf_profile(q, result.label);
    profiles_[result.label] = root_.get();
    result.leaf = root_.get();
    result.created = true;
    result.placement = Placement::kRoot;
    result.rep_distance = std::numeric_limits<double>::infinity();
    ++counters_.labels_created;
    result.stats.elapsed_seconds = seconds_since(start);
    counters_.search_seconds += result.stats.elapsed_seconds;
    return result;
  }

  Descent descent;
  NodePtr* leaf_slot = descend_slots(root_, q, metric, descent, result.stats);
  Node& reached = **leaf_slot;
  const double d3 = distance(reached.leaf().rep, q, metric, result.stats.distances_computed);
  result.rep_distance = d3;
  ++result.stats.comparisons;

  if (d3 < config_.beta) {
    result.label = reached.leaf().label;
    result.leaf = &reached;
  } else {
    result.label = labels_.next();
    result.created = true;
    ++counters_.labels_created;
    // A lone leaf root has no pivots to place against, so both outcomes go down.
    bool go_down = true;
    if (root_->has_pivots()) {
      ++result.stats.comparisons;
      go_down = d3 < config_.zeta;
    }

    auto place_down = [&]() -> Node& {
      try {
        return down_insert(*descent.profile_slot, q, result.label, metric);
      } catch (const DegeneratePivot&) {
        // q coincides with the profile representative; splice at the leaf (d3 >= beta > 0).
        return down_insert(*leaf_slot, q, result.label, metric);
      }
    };

    Node* placed = nullptr;
    if (go_down) {
      placed = &place_down();
      result.placement = Placement::kDown;
      ++counters_.down_inserts;
    } else {
      try {
        placed = &up_insert(root_, q, result.label, metric, descent.root_distances);
        result.placement = Placement::kUp;
        ++counters_.up_inserts;
      } catch (const DegeneratePivot&) {
        placed = &place_down();
        result.placement = Placement::kDown;
        ++counters_.up_fallbacks;
      }
    }
    profiles_[result.label] = placed;
    result.leaf = placed;
  }

  counters_.distances += result.stats.distances_computed;
  counters_.comparisons += result.stats.comparisons;
  result.stats.elapsed_seconds = seconds_since(start);
  counters_.search_seconds += result.stats.elapsed_seconds;
  return result;
}

LookupResult LabelEngine::lookup(const FeatureVector& query) const {
  const auto start = Clock::now();
  const FeatureVector q = prepare(query);
  const MetricKind metric = config_.metric;

  std::shared_lock lock(mutex_);
  LookupResult result;
  if (!root_) {
    result.rep_distance = std::numeric_limits<double>::infinity();
    result.stats.elapsed_seconds = seconds_since(start);
    return result;
  }
  const Node* n = root_.get();
  while (n->has_pivots()) {
    const double d1 = distance(n->p1(), q, metric, result.stats.distances_computed);
    const double d2 = distance(n->p2(), q, metric, result.stats.distances_computed);
    ++result.stats.comparisons;
    n = d1 < d2 ? n->left() : n->right();
    ++result.leaf_depth;
  }
  result.leaf = n;
  result.rep_distance = distance(n->leaf().rep, q, metric, result.stats.distances_computed);
  ++result.stats.comparisons;
  if (result.rep_distance < config_.beta) result.label = n->leaf().label;
  result.stats.elapsed_seconds = seconds_since(start);
  return result;
}

void LabelEngine::batch_insert(const MetadataBag& bag) {
  std::unique_lock lock(mutex_);
  const auto it = profiles_.find(bag.label);
  if (it == profiles_.end()) {
    throw MisdirectedBag("no profile for label " + std::to_string(bag.label.id));
  }
  lock.unlock();
  batch_insert_at(it->second, bag);
}

void LabelEngine::batch_insert_at(const Node* node, const MetadataBag& bag) {
  if (bag.vectors.empty()) throw Error("metadata bag is empty");
  std::vector<FeatureVector> vectors;
  vectors.reserve(bag.vectors.size());
  for (const auto& v : bag.vectors) vectors.push_back(prepare(v));

  std::unique_lock lock(mutex_);
  if (!node || node->label() != std::optional<ProfileLabel>(bag.label)) {
    throw MisdirectedBag("bag for label " + std::to_string(bag.label.id) +
                         " sent to a node of another profile");
  }

  // Route inside the profile subtree by the bag centroid.
  Node* current = const_cast<Node*>(node);
  if (current->has_pivots()) {
    FeatureVector key;
    try {
      key = centroid(vectors, config_.metric);
    } catch (const DegenerateVector&) {
      key = vectors.front();
    }
    while (current->has_pivots()) {
      const double d1 = distance(current->p1(), key, config_.metric, counters_.distances);
      const double d2 = distance(current->p2(), key, config_.metric, counters_.distances);
      ++counters_.comparisons;
      current = (d1 < d2 ? current->left() : current->right()).get();
    }
  }
  ++counters_.batch_inserts;
  insert_into_leaf(*current, std::move(vectors));
}

void LabelEngine::insert_into_leaf(Node& leaf, std::vector<FeatureVector> vectors) {
  auto& container = leaf.leaf().container;
  if (container.size() + vectors.size() < config_.c_max) {
    container.insert(container.end(), std::make_move_iterator(vectors.begin()),
                     std::make_move_iterator(vectors.end()));
    return;
  }
  std::vector<FeatureVector> pool = std::move(container);
  container.clear();
  pool.insert(pool.end(), std::make_move_iterator(vectors.begin()),
              std::make_move_iterator(vectors.end()));
  split_leaf(leaf, std::move(pool));
}

void LabelEngine::split_leaf(Node& leaf, std::vector<FeatureVector> pool) {
  const MetricKind metric = config_.metric;
  std::vector<std::pair<Node*, std::vector<FeatureVector>>> work;
  work.emplace_back(&leaf, std::move(pool));

  while (!work.empty()) {
    auto [node, items] = std::move(work.back());
    work.pop_back();
    const ProfileLabel label = node->leaf().label;

    auto keep_oversized = [&] {
      auto& l = node->leaf();
      l.container = std::move(items);
      l.oversized = true;
      ++counters_.degenerate_leaves;
    };

    PartitionOutcome parts;
    try {
      parts = partition(items, metric, mix_seed(seed_, split_sequence_++), &counters_.distances);
    } catch (const DegeneratePartition&) {
      keep_oversized();
      continue;
    }
    if (!(distance(parts.center1, parts.center2, metric) > 0.0)) {
      keep_oversized();
      continue;
    }
    FeatureVector rep;
    try {
      rep = mean(parts.center1, parts.center2, metric);
    } catch (const DegenerateVector&) {
      rep = parts.center1;
    }

    NodePtr left = new_leaf_profile(parts.center1, label, std::move(parts.cluster1));
    NodePtr right = new_leaf_profile(parts.center2, label, std::move(parts.cluster2));
    Node* left_ptr = left.get();
    Node* right_ptr = right.get();
    promote_to_internal_profile(*node, std::move(parts.center1), std::move(parts.center2),
                                std::move(rep), std::move(left), std::move(right), metric);
    ++counters_.splits;

    for (Node* child : {left_ptr, right_ptr}) {
      auto& c = child->leaf().container;
      if (c.size() >= config_.c_max) {
        std::vector<FeatureVector> again = std::move(c);
        c.clear();
        work.emplace_back(child, std::move(again));
      }
    }
  }
}

TreeStats LabelEngine::stats() const {
  std::shared_lock lock(mutex_);
  return tree_stats(root_.get());
}

EngineCounters LabelEngine::counters() const {
  std::shared_lock lock(mutex_);
  return counters_;
}

std::vector<std::string> LabelEngine::check_invariants() const {
  std::shared_lock lock(mutex_);
  auto problems = bccf::check_invariants(root_.get(), {config_.metric, config_.c_max});
  for (const auto& [label, node] : profiles_) {
    if (node->label() != std::optional<ProfileLabel>(label)) {
      problems.push_back("profile index entry for label " + std::to_string(label.id) +
                         " points at a node of another label");
    }
  }
  return problems;
}

void LabelEngine::write_snapshot(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  bccf::write_snapshot(root_.get(), out);
}

std::vector<std::pair<FeatureVector, ProfileLabel>> LabelEngine::entries() const {
  std::shared_lock lock(mutex_);
  std::vector<std::pair<FeatureVector, ProfileLabel>> out;
  for_each_node(root_.get(), [&out](const Node& n, std::size_t) {
    if (!n.is_leaf()) return;
    for (const auto& v : n.leaf().container) out.emplace_back(v, n.leaf().label);
  });
  return out;
}

const Node* LabelEngine::profile_root(ProfileLabel label) const {
  std::shared_lock lock(mutex_);
  const auto it = profiles_.find(label);
  return it == profiles_.end() ? nullptr : it->second;
}

}  // namespace bccf
