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

#include <utility>

#include <Eigen/Dense>

#include "bccf/bbox.hpp"

namespace bccf {

using StateVector = Eigen::Matrix<double, 8, 1>;
using StateCovariance = Eigen::Matrix<double, 8, 8>;
using MeasurementVector = Eigen::Matrix<double, 4, 1>;
using MeasurementCovariance = Eigen::Matrix<double, 4, 4>;

// Noise model scaled by box height. The aspect-ratio component uses fixed
// standard deviations because it carries no pixel scale.
struct KalmanParams {
  double position_weight = 1.0 / 20.0;
  double velocity_weight = 1.0 / 160.0;
  double gamma_position_std = 1e-2;
  double gamma_velocity_std = 1e-5;
  double gamma_measurement_std = 1e-1;
  double min_height = 1e-3;
  double min_gamma = 1e-3;
};

struct GaussianState {
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Identity();
};

// Constant-velocity filter over (u, v, gamma, h, du, dv, dgamma, dh), one frame
// per step, observing the first four components directly.
class KalmanFilter {
 public:
  explicit KalmanFilter(KalmanParams params = {});

  const KalmanParams& params() const noexcept { return params_; }
  const StateCovariance& transition() const noexcept { return motion_; }

  GaussianState initiate(const BBox& box) const;
  GaussianState predict(const GaussianState& state) const;
  // Joseph-form update; the innovation covariance is regularized if it is not
  // positive definite.
  GaussianState update(const GaussianState& state, const BBox& box) const;

  std::pair<MeasurementVector, MeasurementCovariance> project(const GaussianState& state) const;

  StateCovariance process_noise(const StateVector& mean) const;
  MeasurementCovariance measurement_noise(const StateVector& mean) const;

  static BBox to_bbox(const StateVector& mean);
  static MeasurementVector to_measurement(const BBox& box);

 private:
  KalmanParams params_;
  StateCovariance motion_;
  Eigen::Matrix<double, 4, 8> observation_;
};

}  // namespace bccf
