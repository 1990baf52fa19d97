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

#include "bccf/scene.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace bccf {

void SceneSpec::validate() const {
  if (objects < 1) throw InvalidScene("scene needs at least one object");
  if (frames < 1) throw InvalidScene("scene needs at least one frame");
  if (dimension < 1) throw InvalidScene("feature dimension must be positive");
  if (!(noise >= 0.0) || !(separation >= 0.0)) {
    throw InvalidScene("noise and separation must be non-negative");
  }
  if (separation < 2.0 * noise) {
    throw InvalidScene("infeasible scene: separation " + std::to_string(separation) +
                       " < 2 * noise " + std::to_string(noise));
  }
  if (reentries < 0 || gap < 1) throw InvalidScene("re-entry count must be >= 0 and gap >= 1");
  if (min_lifespan < 0 || min_lifespan > frames) throw InvalidScene("min_lifespan out of range");
  for (const auto& r : schedule) {
    if (r.object < 0 || r.object >= objects) throw InvalidScene("re-entry for unknown object");
    if (r.return_frame <= r.leave_frame + 1) {
      throw InvalidScene("re-entry must leave at least one absent frame");
    }
  }
  if (!(image_width > 0.0) || !(image_height > 0.0)) throw InvalidScene("bad image size");
}

FeatureVector random_unit(std::size_t dimension, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    std::vector<double> v(dimension);
    for (double& x : v) x = gauss(rng);
    FeatureVector f(std::move(v));
    if (f.norm() > 1e-12) return normalize(f);
  }
}

std::vector<FeatureVector> separated_centers(std::size_t count, std::size_t dimension,
                                             double min_separation, MetricKind metric,
                                             std::mt19937_64& rng) {
  std::vector<FeatureVector> centers;
  centers.reserve(count);
  const std::size_t budget = 1000 * (count + 1);
  std::size_t attempts = 0;
  while (centers.size() < count) {
    if (++attempts > budget) {
      throw InvalidScene("cannot place " + std::to_string(count) + " centers at separation " +
                         std::to_string(min_separation) + " in dimension " +
                         std::to_string(dimension));
    }
    FeatureVector c = random_unit(dimension, rng);
    const bool ok = std::all_of(centers.begin(), centers.end(), [&](const FeatureVector& o) {
      return distance(c, o, metric) >= min_separation;
    });
    if (ok) centers.push_back(std::move(c));
  }
  return centers;
}

FeatureVector noisy_sample(const FeatureVector& center, double radius, std::mt19937_64& rng) {
  if (radius <= 0.0) return normalize(center);
  const FeatureVector dir = random_unit(center.size(), rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * unit(rng);
  std::vector<double> v(center.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = center[i] + r * dir[i];
  return normalize(FeatureVector(std::move(v)));
}

namespace {

struct Actor {
  int start = 0;
  int end = 0;
  double u0 = 0.0;
  double speed = 0.0;
  double lane_v = 0.0;
  double h = 0.0;
  double gamma = 0.5;
  std::vector<ReEntry> absences;
  std::vector<double> jumps;  // displacement applied from each return on
};

}  // namespace

Scene generate_scene(const SceneSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Scene scene;
  scene.latents = separated_centers(static_cast<std::size_t>(spec.objects), spec.dimension,
                                    spec.separation, spec.metric, rng);

  const double lane = spec.image_height / spec.objects;
  const double box_h = std::min(0.7 * lane, 200.0);
  const double max_speed = std::max(0.5, 0.55 * spec.image_width / spec.frames);

  std::vector<Actor> actors(static_cast<std::size_t>(spec.objects));
  for (int i = 0; i < spec.objects; ++i) {
    Actor& a = actors[static_cast<std::size_t>(i)];
    a.start = spec.objects == 1 ? 0 : static_cast<int>(unit(rng) * (spec.frames / 4));
    a.end = spec.frames - 1;
    if (spec.min_lifespan > 0) {
      const int earliest_end = std::min(spec.frames - 1, a.start + spec.min_lifespan - 1);
      a.end = earliest_end + static_cast<int>(unit(rng) * (spec.frames - earliest_end));
      a.end = std::min(a.end, spec.frames - 1);
    }
    a.u0 = spec.image_width * (0.1 + 0.15 * unit(rng));
    a.speed = std::min(max_speed, 1.0 + 2.0 * unit(rng));
    a.lane_v = lane * (i + 0.5);
    a.h = box_h;
    a.gamma = 0.4 + 0.1 * unit(rng);
  }

  std::vector<ReEntry> schedule = spec.schedule;
  if (schedule.empty() && spec.reentries > 0) {
    std::vector<int> order(static_cast<std::size_t>(spec.objects));
    for (int i = 0; i < spec.objects; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    // objects whose lifespan cannot hold the gap are passed over
    const std::size_t wanted = static_cast<std::size_t>(std::min(spec.reentries, spec.objects));
    for (std::size_t k = 0; k < order.size() && schedule.size() < wanted; ++k) {
      const Actor& a = actors[static_cast<std::size_t>(order[k])];
      const int lo = a.start + 5;
      const int hi = a.end - spec.gap - 5;
      if (hi < lo) continue;
      const int leave = lo + static_cast<int>(unit(rng) * (hi - lo + 1));
      schedule.push_back({order[k], leave, leave + spec.gap});
    }
  }
  for (const auto& r : schedule) {
    Actor& a = actors[static_cast<std::size_t>(r.object)];
    a.absences.push_back(r);
    const double w = a.gamma * a.h;
    double u_at_return = a.u0 + a.speed * (r.return_frame - a.start);
    for (double j : a.jumps) u_at_return += j;
    const double jump = std::max(6.0 * w, 150.0);
    a.jumps.push_back(u_at_return + jump < 0.95 * spec.image_width ? jump : -jump);
  }
  std::sort(schedule.begin(), schedule.end(), [](const ReEntry& x, const ReEntry& y) {
    return std::tie(x.return_frame, x.object) < std::tie(y.return_frame, y.object);
  });
  scene.reentries = schedule;

  std::normal_distribution<double> jitter(0.0, spec.box_jitter);
  for (int f = 0; f < spec.frames; ++f) {
    for (int i = 0; i < spec.objects; ++i) {
      const Actor& a = actors[static_cast<std::size_t>(i)];
      if (f < a.start || f > a.end) continue;
      double shift = 0.0;
      bool hidden = false;
      for (std::size_t k = 0; k < a.absences.size(); ++k) {
        const auto& r = a.absences[k];
        if (f > r.leave_frame && f < r.return_frame) hidden = true;
        if (f >= r.return_frame) shift += a.jumps[k];
      }
      if (hidden) continue;
      Detection d;
      d.frame = f;
      d.camera = spec.camera;
      const double ju = spec.box_jitter > 0.0 ? jitter(rng) : 0.0;
      const double jv = spec.box_jitter > 0.0 ? jitter(rng) : 0.0;
      d.box = BBox{a.u0 + a.speed * (f - a.start) + shift + ju, a.lane_v + jv, a.gamma, a.h};
      d.feature = noisy_sample(scene.latents[static_cast<std::size_t>(i)], spec.noise, rng);
      d.truth_id = i;
      scene.detections.push_back(std::move(d));
    }
  }
  return scene;
}

}  // namespace bccf
