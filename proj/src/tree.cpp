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

#include "bccf/tree.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace bccf {

Node::~Node() {
  std::vector<NodePtr> pending;
  auto detach = [&pending](Node& n) {
    if (n.is_leaf()) return;
    if (n.left()) pending.push_back(std::move(n.left()));
    if (n.right()) pending.push_back(std::move(n.right()));
  };
  detach(*this);
  while (!pending.empty()) {
    NodePtr n = std::move(pending.back());
    pending.pop_back();
    detach(*n);
  }
}

LeafProfileNode& Node::leaf() {
  if (auto* l = std::get_if<LeafProfileNode>(&body)) return *l;
  throw StructuralError("node is not a leaf profile");
}

const LeafProfileNode& Node::leaf() const {
  if (const auto* l = std::get_if<LeafProfileNode>(&body)) return *l;
  throw StructuralError("node is not a leaf profile");
}

const FeatureVector& Node::p1() const {
  if (const auto* n = std::get_if<InternalNode>(&body)) return n->p1;
  if (const auto* n = std::get_if<InternalProfileNode>(&body)) return n->p1;
  throw StructuralError("leaf profile has no pivots");
}

const FeatureVector& Node::p2() const {
  if (const auto* n = std::get_if<InternalNode>(&body)) return n->p2;
  if (const auto* n = std::get_if<InternalProfileNode>(&body)) return n->p2;
  throw StructuralError("leaf profile has no pivots");
}

NodePtr& Node::left() {
  if (auto* n = std::get_if<InternalNode>(&body)) return n->left;
  if (auto* n = std::get_if<InternalProfileNode>(&body)) return n->left;
  throw StructuralError("leaf profile has no children");
}

NodePtr& Node::right() {
  if (auto* n = std::get_if<InternalNode>(&body)) return n->right;
  if (auto* n = std::get_if<InternalProfileNode>(&body)) return n->right;
  throw StructuralError("leaf profile has no children");
}

const Node* Node::left() const { return const_cast<Node*>(this)->left().get(); }
const Node* Node::right() const { return const_cast<Node*>(this)->right().get(); }

std::optional<ProfileLabel> Node::label() const noexcept {
  if (const auto* n = std::get_if<InternalProfileNode>(&body)) return n->label;
  if (const auto* n = std::get_if<LeafProfileNode>(&body)) return n->label;
  return std::nullopt;
}

const FeatureVector* Node::rep() const noexcept {
  if (const auto* n = std::get_if<InternalProfileNode>(&body)) return &n->rep;
  if (const auto* n = std::get_if<LeafProfileNode>(&body)) return &n->rep;
  return nullptr;
}

NodePtr new_leaf_profile(FeatureVector rep, ProfileLabel label,
                         std::vector<FeatureVector> container) {
  return std::make_unique<Node>(
      LeafProfileNode{std::move(rep), label, std::move(container), false});
}

namespace {

void require_distinct_pivots(const FeatureVector& p1, const FeatureVector& p2, MetricKind metric) {
  if (!(distance(p1, p2, metric) > 0.0)) {
    throw DegeneratePivot("pivots of a two-pivot node must be at positive distance");
  }
}

}  // namespace

NodePtr new_internal(FeatureVector p1, FeatureVector p2, NodePtr left, NodePtr right,
                     std::optional<ProfileTag> profile, MetricKind metric) {
  if (!left || !right) throw StructuralError("internal node needs two children");
  require_distinct_pivots(p1, p2, metric);
  if (profile) {
    return std::make_unique<Node>(InternalProfileNode{std::move(p1), std::move(p2), profile->label,
                                                      std::move(profile->rep), std::move(left),
                                                      std::move(right)});
  }
  return std::make_unique<Node>(
      InternalNode{std::move(p1), std::move(p2), std::move(left), std::move(right)});
}

NodePtr new_splice_internal(FeatureVector p1, FeatureVector p2, NodePtr child, Side child_side,
                            MetricKind metric) {
  if (!child) throw StructuralError("splice node needs its new child");
  require_distinct_pivots(p1, p2, metric);
  InternalNode node{std::move(p1), std::move(p2), nullptr, nullptr};
  (child_side == Side::kLeft ? node.left : node.right) = std::move(child);
  return std::make_unique<Node>(std::move(node));
}

void pointer_switch(NodePtr& slot, NodePtr replacement) {
  if (!slot) throw StructuralError("pointer switch on an empty slot");
  if (!replacement || replacement->is_leaf()) {
    throw StructuralError("pointer switch needs a two-pivot replacement");
  }
  NodePtr& l = replacement->left();
  NodePtr& r = replacement->right();
  if ((l == nullptr) == (r == nullptr)) {
    throw StructuralError("replacement must have exactly one empty child slot");
  }
  (l ? r : l) = std::move(slot);
  slot = std::move(replacement);
}

void promote_to_internal_profile(Node& leaf, FeatureVector p1, FeatureVector p2,
                                 FeatureVector rep, NodePtr left, NodePtr right,
                                 MetricKind metric) {
  if (!leaf.is_leaf()) throw StructuralError("only a leaf profile can be promoted");
  if (!left || !right) throw StructuralError("promotion needs two children");
  require_distinct_pivots(p1, p2, metric);
  const ProfileLabel label = leaf.leaf().label;
  leaf.body = InternalProfileNode{std::move(p1), std::move(p2), label,
                                  std::move(rep), std::move(left), std::move(right)};
}

void for_each_node(const Node* root, const std::function<void(const Node&, std::size_t)>& fn) {
  if (!root) return;
  std::vector<std::pair<const Node*, std::size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [n, depth] = stack.back();
    stack.pop_back();
    fn(*n, depth);
    if (n->has_pivots()) {
      // right first so the left subtree is visited first
      if (n->right()) stack.emplace_back(n->right(), depth + 1);
      if (n->left()) stack.emplace_back(n->left(), depth + 1);
    }
  }
}

TreeStats tree_stats(const Node* root) {
  TreeStats s;
  std::unordered_set<ProfileLabel> labels;
  for_each_node(root, [&](const Node& n, std::size_t depth) {
    s.height = std::max(s.height, depth);
    switch (n.kind()) {
      case NodeKind::kInternal:
        ++s.internal_count;
        break;
      case NodeKind::kInternalProfile:
        ++s.internal_profile_count;
        labels.insert(*n.label());
        break;
      case NodeKind::kLeafProfile:
        ++s.leaf_count;
        labels.insert(n.leaf().label);
        s.indexed_vectors += n.leaf().container.size();
        break;
    }
  });
  s.profile_count = labels.size();
  return s;
}

std::optional<std::size_t> depth_of(const Node* root, const Node* target) {
  std::optional<std::size_t> found;
  for_each_node(root, [&](const Node& n, std::size_t depth) {
    if (&n == target) found = depth;
  });
  return found;
}

std::vector<std::string> check_invariants(const Node* root, const InvariantOptions& options) {
  std::vector<std::string> problems;
  if (!root) return problems;

  std::size_t two_pivot = 0;
  std::size_t leaves = 0;
  std::unordered_map<ProfileLabel, std::size_t> profile_roots;

  // (node, label of the enclosing profile subtree if any)
  std::vector<std::pair<const Node*, std::optional<ProfileLabel>>> stack{{root, std::nullopt}};
  while (!stack.empty()) {
    auto [n, enclosing] = stack.back();
    stack.pop_back();
    const auto label = n->label();
    if (enclosing) {
      if (!label) {
        problems.push_back("plain internal node inside profile " + std::to_string(enclosing->id));
      } else if (*label != *enclosing) {
        problems.push_back("label " + std::to_string(label->id) + " inside profile subtree " +
                           std::to_string(enclosing->id));
      }
    } else if (label) {
      ++profile_roots[*label];
    }

    if (n->is_leaf()) {
      ++leaves;
      const auto& leaf = n->leaf();
      if (!leaf.label.valid()) problems.push_back("leaf without a valid label");
      if (options.c_max && !leaf.oversized && leaf.container.size() >= *options.c_max) {
        problems.push_back("leaf " + std::to_string(leaf.label.id) + " holds " +
                           std::to_string(leaf.container.size()) + " >= c_max vectors");
      }
      continue;
    }
    ++two_pivot;
    const Node* l = n->left();
    const Node* r = n->right();
    if (!l || !r) {
      problems.push_back("two-pivot node with a missing child");
    }
    if (!(distance(n->p1(), n->p2(), options.metric) > 0.0)) {
      problems.push_back("two-pivot node with coincident pivots");
    }
    const auto inner = label ? label : enclosing;
    if (r) stack.emplace_back(r, inner);
    if (l) stack.emplace_back(l, inner);
  }

  if (leaves != two_pivot + 1) {
    problems.push_back("leaf count " + std::to_string(leaves) + " != internal count " +
                       std::to_string(two_pivot) + " + 1");
  }
  for (const auto& [label, count] : profile_roots) {
    if (count > 1) {
      problems.push_back("profile " + std::to_string(label.id) + " is split over " +
                         std::to_string(count) + " subtrees");
    }
  }
  return problems;
}

std::string vector_hash(const FeatureVector& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double x : v.values()) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

void write_snapshot(const Node* root, std::ostream& out) {
  for_each_node(root, [&out](const Node& n, std::size_t) {
    switch (n.kind()) {
      case NodeKind::kInternal:
        out << "I|" << vector_hash(n.p1()) << '|' << vector_hash(n.p2()) << '\n';
        break;
      case NodeKind::kInternalProfile:
        out << "P|" << n.label()->id << '|' << vector_hash(n.p1()) << '|' << vector_hash(n.p2())
            << '|' << vector_hash(*n.rep()) << '\n';
        break;
      case NodeKind::kLeafProfile:
        out << "L|" << n.leaf().label.id << '|' << n.leaf().container.size() << '\n';
        break;
    }
  });
}

TreeStats snapshot_stats(std::istream& in) {
  TreeStats s;
  std::unordered_set<std::uint64_t> labels;
  // child depths still owed by open two-pivot nodes
  std::vector<std::size_t> open;
  bool seen_root = false;
  std::string line;
  std::size_t line_no = 0;

  auto fields_of = [](const std::string& text) {
    std::vector<std::string> fields;
    std::stringstream ss(text);
    std::string f;
    while (std::getline(ss, f, '|')) fields.push_back(f);
    return fields;
  };
  auto to_u64 = [&line_no](const std::string& text) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(text, &pos);
      if (pos != text.size()) throw InputError("bad integer '" + text + "'", line_no);
      return static_cast<std::uint64_t>(v);
    } catch (const std::logic_error&) {
      throw InputError("bad integer '" + text + "'", line_no);
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (seen_root && open.empty()) throw InputError("snapshot continues after a complete tree", line_no);
    std::size_t depth = 0;
    if (!open.empty()) {
      depth = open.back();
      open.pop_back();
    }
    seen_root = true;
    s.height = std::max(s.height, depth);
    const auto f = fields_of(line);
    if (f.empty()) throw InputError("empty snapshot record", line_no);
    if (f[0] == "I" && f.size() == 3) {
      ++s.internal_count;
    } else if (f[0] == "P" && f.size() == 5) {
      ++s.internal_profile_count;
      labels.insert(to_u64(f[1]));
    } else if (f[0] == "L" && f.size() == 3) {
      ++s.leaf_count;
      labels.insert(to_u64(f[1]));
      s.indexed_vectors += to_u64(f[2]);
      continue;
    } else {
      throw InputError("unrecognized snapshot record '" + line + "'", line_no);
    }
    open.push_back(depth + 1);
    open.push_back(depth + 1);
  }
  if (!open.empty()) throw InputError("snapshot ends inside an unfinished subtree", line_no);
  s.profile_count = labels.size();
  return s;
}

}  // namespace bccf
