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

namespace bccf {

// Center (u, v), aspect ratio gamma = width / height, height h, in pixels.
struct BBox {
  double u = 0.0;
  double v = 0.0;
  double gamma = 1.0;
  double h = 1.0;

  double width() const noexcept { return gamma * h; }
  friend bool operator==(const BBox&, const BBox&) = default;
};

double iou(const BBox& a, const BBox& b);

}  // namespace bccf
