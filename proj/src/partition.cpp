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

#include "bccf/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bccf {

namespace {

// 0 -> cluster1, 1 -> cluster2
std::vector<std::uint8_t> assign(std::span<const FeatureVector> data, const FeatureVector& c1,
                                 const FeatureVector& c2, MetricKind metric,
                                 std::uint64_t& counter) {
  std::vector<std::uint8_t> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double d1 = distance(data[i], c1, metric, counter);
    const double d2 = distance(data[i], c2, metric, counter);
    out[i] = d1 < d2 ? 0 : 1;
  }
  return out;
}

bool both_sides_used(const std::vector<std::uint8_t>& a) {
  const auto ones = std::count(a.begin(), a.end(), std::uint8_t{1});
  return ones > 0 && static_cast<std::size_t>(ones) < a.size();
}

std::vector<FeatureVector> members(std::span<const FeatureVector> data,
                                   const std::vector<std::uint8_t>& a, std::uint8_t side) {
  std::vector<FeatureVector> out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (a[i] == side) out.push_back(data[i]);
  }
  return out;
}

// Single-point moves that lower the within-cluster cost (Hartigan's rule). For
// squared euclidean the per-cluster score is |s|^2/n, for cosine on unit
// vectors it is |s|; the total is maximized. A point that sits nearer the other
// center always improves the score, so a stable result is also Lloyd-stable.
bool refine(std::span<const FeatureVector> data, std::vector<std::uint8_t>& a, MetricKind metric) {
  const std::size_t dim = data[0].size();
  std::vector<std::vector<double>> pts(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const FeatureVector p = canonicalize(data[i], metric);
    pts[i].assign(p.values().begin(), p.values().end());
  }
  std::vector<double> sums[2] = {std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  std::size_t counts[2] = {0, 0};
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t k = 0; k < dim; ++k) sums[a[i]][k] += pts[i][k];
    ++counts[a[i]];
  }
  auto score = [&](double sq, std::size_t n) {
    return metric == MetricKind::kEuclidean ? sq / static_cast<double>(n) : std::sqrt(sq);
  };

  bool moved_any = false;
  for (std::size_t pass = 0; pass < kPartitionMaxIterations; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const int from = a[i];
      const int to = 1 - from;
      if (counts[from] <= 1) continue;
      double from_sq = 0, to_sq = 0, from_after = 0, to_after = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double f = sums[from][k], t = sums[to][k], x = pts[i][k];
        from_sq += f * f;
        to_sq += t * t;
        from_after += (f - x) * (f - x);
        to_after += (t + x) * (t + x);
      }
      const double before = score(from_sq, counts[from]) + score(to_sq, counts[to]);
      const double after = score(from_after, counts[from] - 1) + score(to_after, counts[to] + 1);
      if (after > before + 1e-12 * std::max(1.0, std::abs(before))) {
        for (std::size_t k = 0; k < dim; ++k) {
          sums[from][k] -= pts[i][k];
          sums[to][k] += pts[i][k];
        }
        --counts[from];
        ++counts[to];
        a[i] = static_cast<std::uint8_t>(to);
        moved = true;
      }
    }
    if (!moved) break;
    moved_any = true;
  }
  return moved_any;
}

}  // namespace

PartitionOutcome partition(std::span<const FeatureVector> data, MetricKind metric,
                           std::uint64_t seed, std::uint64_t* distance_counter) {
  if (data.size() < 2) throw std::invalid_argument("partition needs at least two points");
  std::uint64_t local = 0;
  std::uint64_t& counter = distance_counter ? *distance_counter : local;

  std::vector<std::size_t> sample(data.size());
  std::iota(sample.begin(), sample.end(), std::size_t{0});
  const std::size_t m = std::min(kPartitionSeedSample, data.size());
  if (m < data.size()) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, data.size() - 1);
      std::swap(sample[i], sample[pick(rng)]);
    }
    sample.resize(m);
  }

  std::size_t a = sample[0];
  std::size_t b = sample[0];
  double best = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      const double d = distance(data[sample[i]], data[sample[j]], metric, counter);
      if (d > best) {
        best = d;
        a = sample[i];
        b = sample[j];
      }
    }
  }
  if (!(best > 0.0)) {
    // The sample is a single point; anything distinct from it will do.
    for (std::size_t k = 0; k < data.size(); ++k) {
      if (distance(data[a], data[k], metric, counter) > 0.0) {
        b = k;
        best = 1.0;
        break;
      }
    }
    if (!(best > 0.0)) throw DegeneratePartition("all points of the partition are identical");
  }

  PartitionOutcome out;
  FeatureVector c1 = data[a];
  FeatureVector c2 = data[b];
  // `fitted` is always the assignment against (c1, c2); it is what we return.
  auto fitted = assign(data, c1, c2, metric, counter);
  auto working = fitted;

  for (std::size_t it = 1; it <= kPartitionMaxIterations; ++it) {
    out.iterations = it;
    FeatureVector m1;
    FeatureVector m2;
    try {
      m1 = centroid(members(data, working, 0), metric);
      m2 = centroid(members(data, working, 1), metric);
    } catch (const DegenerateVector&) {
      break;
    }
    auto next = assign(data, m1, m2, metric, counter);
    if (!both_sides_used(next)) break;
    c1 = std::move(m1);
    c2 = std::move(m2);
    fitted = next;
    if (next == working && !refine(data, next, metric)) {
      out.converged = true;
      break;
    }
    working = std::move(next);
  }

  const auto& assignment = fitted;
  out.cluster1 = members(data, assignment, 0);
  out.cluster2 = members(data, assignment, 1);
  out.center1 = std::move(c1);
  out.center2 = std::move(c2);
  return out;
}

}  // namespace bccf
