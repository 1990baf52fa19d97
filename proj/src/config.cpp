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

#include "bccf/config.hpp"

#include <cmath>
#include <string>

namespace bccf {

void IndexConfig::validate() const {
  if (dimension < 1) throw InvalidConfig("dimension must be at least 1");
  if (!(beta > 0.0)) throw InvalidConfig("beta must be positive");
  if (!(beta < zeta)) {
    throw InvalidConfig("beta (" + std::to_string(beta) + ") must be below zeta (" +
                        std::to_string(zeta) + ")");
  }
  if (!std::isfinite(zeta)) throw InvalidConfig("zeta must be finite");
  if (c_max < 2) throw InvalidConfig("c_max must be at least 2");
}

std::size_t IndexConfig::capacity_for(std::size_t expected_size) {
  const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(expected_size))));
  return root < 2 ? 2 : root;
}

}  // namespace bccf
