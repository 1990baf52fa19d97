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

#include "bccf/tracking.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace bccf {

ProfileLabel EngineLabelSource::assign(const FeatureVector& feature) {
  return engine_.label_search(feature).label;
}

void EngineLabelSource::submit(const MetadataBag& bag) { engine_.batch_insert(bag); }

namespace {

struct Candidate {
  double overlap;
  std::size_t track;
  std::size_t detection;
};

}  // namespace

TrackingResult run_tracking(std::span<const Detection> stream, LabelSource& labels,
                            const TrackingConfig& config) {
  TrackingResult result;
  if (stream.empty()) return result;

  const KalmanFilter kf(config.kalman);
  std::vector<TrackState> live;
  int next_track_id = 1;

  auto finish = [&](TrackState& t) {
    if (!t.label.valid()) return;
    t.bag.label = t.label;
    t.bag.source = BagSource{t.camera, t.first_frame, t.last_frame};
    result.tracks.push_back(
        {t.track_id, t.camera, t.label, t.first_frame, t.last_frame, t.bag.vectors.size()});
    labels.submit(t.bag);
  };

  auto maybe_label = [&](TrackState& t, const Detection& d) {
    if (t.label.valid() || t.hits <= config.confirm_after) return;
    t.label = labels.assign(d.feature);
    ++result.label_searches;
  };

  auto record = [&](const TrackState& t, const Detection& d) {
    if (!t.label.valid()) return;
    result.records.push_back(
        {d.frame, d.camera, t.track_id, t.label, KalmanFilter::to_bbox(t.filter.mean), d.truth_id});
  };

  std::size_t cursor = 0;
  const int first_frame = stream.front().frame;
  int frame = first_frame;
  while (cursor < stream.size()) {
    std::size_t end = cursor;
    while (end < stream.size() && stream[end].frame == frame) ++end;
    if (end < stream.size() && stream[end].frame < frame) {
      throw InputError("detection stream is not frame-ordered at frame " +
                       std::to_string(stream[end].frame));
    }
    const std::span<const Detection> dets = stream.subspan(cursor, end - cursor);

    for (auto& t : live) {
      t.filter = kf.predict(t.filter);
      ++t.age;
    }

    std::vector<Candidate> candidates;
    for (std::size_t ti = 0; ti < live.size(); ++ti) {
      const BBox predicted = KalmanFilter::to_bbox(live[ti].filter.mean);
      for (std::size_t di = 0; di < dets.size(); ++di) {
        if (dets[di].camera != live[ti].camera) continue;
        const double o = iou(predicted, dets[di].box);
        if (o >= config.association_iou) candidates.push_back({o, ti, di});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(b.overlap, a.track, a.detection) < std::tie(a.overlap, b.track, b.detection);
    });

    std::vector<bool> track_used(live.size(), false);
    std::vector<bool> det_used(dets.size(), false);
    for (const auto& c : candidates) {
      if (track_used[c.track] || det_used[c.detection]) continue;
      track_used[c.track] = true;
      det_used[c.detection] = true;
      TrackState& t = live[c.track];
      const Detection& d = dets[c.detection];
      t.filter = kf.update(t.filter, d.box);
      ++t.hits;
      t.missed = 0;
      t.last_frame = frame;
      t.bag.vectors.push_back(d.feature);
      maybe_label(t, d);
      record(t, d);
    }
    for (std::size_t ti = 0; ti < live.size(); ++ti) {
      if (!track_used[ti]) ++live[ti].missed;
    }

    for (std::size_t di = 0; di < dets.size(); ++di) {
      if (det_used[di]) continue;
      const Detection& d = dets[di];
      TrackState t;
      t.track_id = next_track_id++;
      t.camera = d.camera;
      t.filter = kf.initiate(d.box);
      t.hits = 1;
      t.first_frame = t.last_frame = frame;
      t.bag.vectors.push_back(d.feature);
      maybe_label(t, d);
      record(t, d);
      live.push_back(std::move(t));
    }

    auto dead = std::stable_partition(live.begin(), live.end(), [&](const TrackState& t) {
      return t.missed < config.max_missed;
    });
    for (auto it = dead; it != live.end(); ++it) finish(*it);
    live.erase(dead, live.end());

    cursor = end;
    ++frame;
  }
  for (auto& t : live) finish(t);
  return result;
}

std::vector<Hypothesis> to_hypotheses(const TrackingResult& result) {
  std::vector<Hypothesis> out;
  out.reserve(result.records.size());
  for (const auto& r : result.records) out.push_back({r.frame, r.camera, r.label.id, r.box});
  return out;
}

std::vector<GroundTruthBox> to_ground_truth(std::span<const Detection> stream) {
  std::vector<GroundTruthBox> out;
  for (const auto& d : stream) {
    if (d.truth_id >= 0) out.push_back({d.frame, d.camera, d.truth_id, d.box});
  }
  return out;
}

}  // namespace bccf
