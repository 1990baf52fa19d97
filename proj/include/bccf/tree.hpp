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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bccf/metric.hpp"

namespace bccf {

// Identity of one tracked object. Zero is never issued.
struct ProfileLabel {
  std::uint64_t id = 0;

  constexpr bool valid() const noexcept { return id != 0; }
  friend constexpr auto operator<=>(ProfileLabel, ProfileLabel) = default;
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct InternalNode {
  FeatureVector p1;
  FeatureVector p2;
  NodePtr left;
  NodePtr right;
};

struct InternalProfileNode {
  FeatureVector p1;
  FeatureVector p2;
  ProfileLabel label;
  FeatureVector rep;
  NodePtr left;
  NodePtr right;
};

struct LeafProfileNode {
  FeatureVector rep;
  ProfileLabel label;
  std::vector<FeatureVector> container;
  // Set when a pool of identical vectors could not be split below capacity.
  bool oversized = false;
};

enum class NodeKind { kInternal, kInternalProfile, kLeafProfile };

struct Node {
  using Body = std::variant<InternalNode, InternalProfileNode, LeafProfileNode>;

  explicit Node(Body b) : body(std::move(b)) {}
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;
  // Tears the subtree down iteratively so deep trees cannot exhaust the stack.
  ~Node();

  NodeKind kind() const noexcept { return static_cast<NodeKind>(body.index()); }
  bool is_leaf() const noexcept { return kind() == NodeKind::kLeafProfile; }
  bool has_pivots() const noexcept { return !is_leaf(); }

  LeafProfileNode& leaf();
  const LeafProfileNode& leaf() const;

  // Pivot/child accessors; StructuralError on leaves.
  const FeatureVector& p1() const;
  const FeatureVector& p2() const;
  NodePtr& left();
  NodePtr& right();
  const Node* left() const;
  const Node* right() const;

  // Label carried by profile nodes, nullopt on plain internals.
  std::optional<ProfileLabel> label() const noexcept;
  // Representative of profile nodes, nullptr on plain internals.
  const FeatureVector* rep() const noexcept;

  Body body;
};

struct ProfileTag {
  ProfileLabel label;
  FeatureVector rep;
};

enum class Side { kLeft, kRight };

NodePtr new_leaf_profile(FeatureVector rep, ProfileLabel label,
                         std::vector<FeatureVector> container = {});

// Internal when `profile` is absent, InternalProfile otherwise.
NodePtr new_internal(FeatureVector p1, FeatureVector p2, NodePtr left, NodePtr right,
                     std::optional<ProfileTag> profile, MetricKind metric);

// Internal node with `child` on `child_side` and an empty slot on the other side,
// to be filled by pointer_switch.
NodePtr new_splice_internal(FeatureVector p1, FeatureVector p2, NodePtr child, Side child_side,
                            MetricKind metric);

// Installs `replacement` in `slot` and moves the previous occupant into the
// replacement's single empty child slot.
void pointer_switch(NodePtr& slot, NodePtr replacement);

// Turns a leaf into an internal profile node in place (the Node address is kept).
// The container is dropped; its vectors are expected to live in the children.
void promote_to_internal_profile(Node& leaf, FeatureVector p1, FeatureVector p2,
                                 FeatureVector rep, NodePtr left, NodePtr right,
                                 MetricKind metric);

struct TreeStats {
  std::size_t height = 0;
  std::size_t internal_count = 0;
  std::size_t internal_profile_count = 0;
  std::size_t leaf_count = 0;
  std::size_t profile_count = 0;
  std::size_t indexed_vectors = 0;

  friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

TreeStats tree_stats(const Node* root);

// Depth (edges from root) of `target`, nullopt when it is not in the tree.
std::optional<std::size_t> depth_of(const Node* root, const Node* target);

// Preorder visit; the callback receives each node and its depth.
void for_each_node(const Node* root, const std::function<void(const Node&, std::size_t)>& fn);

struct InvariantOptions {
  MetricKind metric = MetricKind::kCosine;
  std::optional<std::size_t> c_max;  // check leaf capacity when set
};

// Returns a human-readable description of every violated structural invariant.
std::vector<std::string> check_invariants(const Node* root, const InvariantOptions& options);

// Line-oriented preorder dump: I|p1|p2, P|lab|p1|p2|rep, L|lab|size
// where each vector is shown as a 64-bit FNV-1a hash of its bytes.
void write_snapshot(const Node* root, std::ostream& out);
TreeStats snapshot_stats(std::istream& in);

std::string vector_hash(const FeatureVector& v);

}  // namespace bccf

template <>
struct std::hash<bccf::ProfileLabel> {
  std::size_t operator()(bccf::ProfileLabel l) const noexcept {
    return std::hash<std::uint64_t>{}(l.id);
  }
};
