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

#include "bccf/bbox.hpp"

#include <algorithm>

namespace bccf {

double iou(const BBox& a, const BBox& b) {
  const double aw = a.width();
  const double bw = b.width();
  const double left = std::max(a.u - aw / 2, b.u - bw / 2);
  const double right = std::min(a.u + aw / 2, b.u + bw / 2);
  const double top = std::max(a.v - a.h / 2, b.v - b.h / 2);
  const double bottom = std::min(a.v + a.h / 2, b.v + b.h / 2);
  const double inter = std::max(0.0, right - left) * std::max(0.0, bottom - top);
  const double uni = aw * a.h + bw * b.h - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace bccf
