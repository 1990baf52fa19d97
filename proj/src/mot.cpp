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

#include "bccf/mot.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace bccf {

namespace {

using TruthKey = std::pair<int, int>;                // (camera, truth id)
using FrameKey = std::pair<int, int>;                // (frame, camera)

struct TruthTrack {
  std::size_t present = 0;
  std::size_t covered = 0;
  bool ever_matched = false;
  bool matched_last = false;
  std::optional<std::uint64_t> last_hypothesis;
};

struct Pair {
  double overlap;
  std::size_t truth;
  std::size_t hyp;
};

}  // namespace

MotReport compute_mot_metrics(std::span<const Hypothesis> hypotheses,
                              std::span<const GroundTruthBox> truth, double iou_threshold) {
  if (truth.empty()) throw std::invalid_argument("ground truth is empty");

  std::map<FrameKey, std::vector<const GroundTruthBox*>> truth_by_frame;
  std::map<FrameKey, std::vector<const Hypothesis*>> hyp_by_frame;
  for (const auto& t : truth) truth_by_frame[{t.frame, t.camera}].push_back(&t);
  for (const auto& h : hypotheses) hyp_by_frame[{h.frame, h.camera}].push_back(&h);
  std::vector<FrameKey> keys;
  for (const auto& [k, _] : truth_by_frame) keys.push_back(k);
  for (const auto& [k, _] : hyp_by_frame) {
    if (!truth_by_frame.count(k)) keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end());

  MotReport report;
  std::map<TruthKey, TruthTrack> tracks;
  double overlap_sum = 0.0;

  static const std::vector<const GroundTruthBox*> kNoTruth;
  static const std::vector<const Hypothesis*> kNoHyp;
  for (const auto& key : keys) {
    const auto ti = truth_by_frame.find(key);
    const auto hi = hyp_by_frame.find(key);
    const auto& ts = ti == truth_by_frame.end() ? kNoTruth : ti->second;
    const auto& hs = hi == hyp_by_frame.end() ? kNoHyp : hi->second;
    const int camera = key.second;

    std::vector<int> truth_match(ts.size(), -1);
    std::vector<bool> hyp_used(hs.size(), false);

    // Keep previous correspondences that are still valid.
    for (std::size_t a = 0; a < ts.size(); ++a) {
      const auto& track = tracks[{camera, ts[a]->id}];
      if (!track.last_hypothesis) continue;
      for (std::size_t b = 0; b < hs.size(); ++b) {
        if (hyp_used[b] || hs[b]->id != *track.last_hypothesis) continue;
        if (iou(ts[a]->box, hs[b]->box) >= iou_threshold) {
          truth_match[a] = static_cast<int>(b);
          hyp_used[b] = true;
        }
        break;
      }
    }

    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < ts.size(); ++a) {
      if (truth_match[a] >= 0) continue;
      for (std::size_t b = 0; b < hs.size(); ++b) {
        if (hyp_used[b]) continue;
        const double o = iou(ts[a]->box, hs[b]->box);
        if (o >= iou_threshold) pairs.push_back({o, a, b});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
      return std::tie(y.overlap, x.truth, x.hyp) < std::tie(x.overlap, y.truth, y.hyp);
    });
    for (const auto& p : pairs) {
      if (truth_match[p.truth] >= 0 || hyp_used[p.hyp]) continue;
      truth_match[p.truth] = static_cast<int>(p.hyp);
      hyp_used[p.hyp] = true;
    }

    std::size_t matched = 0;
    for (std::size_t a = 0; a < ts.size(); ++a) {
      auto& track = tracks[{camera, ts[a]->id}];
      ++track.present;
      const bool is_matched = truth_match[a] >= 0;
      if (is_matched) {
        const auto& h = *hs[static_cast<std::size_t>(truth_match[a])];
        ++matched;
        ++track.covered;
        overlap_sum += iou(ts[a]->box, h.box);
        if (track.last_hypothesis && *track.last_hypothesis != h.id) ++report.id_sw;
        if (track.ever_matched && !track.matched_last) ++report.frag;
        track.last_hypothesis = h.id;
        track.ever_matched = true;
      }
      track.matched_last = is_matched;
    }
    report.matches += matched;
    report.gt += ts.size();
    report.fn += ts.size() - matched;
    report.fp += hs.size() - matched;
  }

  report.truth_ids = tracks.size();
  std::size_t mostly_tracked = 0;
  std::size_t mostly_lost = 0;
  for (const auto& [_, t] : tracks) {
    const double ratio = static_cast<double>(t.covered) / static_cast<double>(t.present);
    if (ratio >= 0.8) ++mostly_tracked;
    if (ratio <= 0.2) ++mostly_lost;
  }
  const auto ids = static_cast<double>(report.truth_ids);
  report.mt = static_cast<double>(mostly_tracked) / ids;
  report.ml = static_cast<double>(mostly_lost) / ids;
  report.mota = 1.0 - static_cast<double>(report.fn + report.fp + report.id_sw) /
                          static_cast<double>(report.gt);
  report.motp = report.matches > 0 ? overlap_sum / static_cast<double>(report.matches) : 0.0;
  return report;
}

}  // namespace bccf
