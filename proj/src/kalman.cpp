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

#include "bccf/kalman.hpp"

#include <algorithm>

namespace bccf {

KalmanFilter::KalmanFilter(KalmanParams params) : params_(params) {
  motion_.setIdentity();
  for (int i = 0; i < 4; ++i) motion_(i, i + 4) = 1.0;
  observation_.setZero();
  for (int i = 0; i < 4; ++i) observation_(i, i) = 1.0;
}

MeasurementVector KalmanFilter::to_measurement(const BBox& box) {
  return MeasurementVector(box.u, box.v, box.gamma, box.h);
}

BBox KalmanFilter::to_bbox(const StateVector& mean) {
  return BBox{mean(0), mean(1), mean(2), mean(3)};
}

GaussianState KalmanFilter::initiate(const BBox& box) const {
  GaussianState s;
  s.mean.setZero();
  s.mean.head<4>() = to_measurement(box);
  const double h = std::max(box.h, params_.min_height);
  const double wp = params_.position_weight;
  const double wv = params_.velocity_weight;
  StateVector sd;
  sd << 2 * wp * h, 2 * wp * h, params_.gamma_position_std, 2 * wp * h,  //
      10 * wv * h, 10 * wv * h, params_.gamma_velocity_std, 10 * wv * h;
  s.covariance = sd.array().square().matrix().asDiagonal();
  return s;
}

StateCovariance KalmanFilter::process_noise(const StateVector& mean) const {
  const double h = std::max(mean(3), params_.min_height);
  const double wp = params_.position_weight * h;
  const double wv = params_.velocity_weight * h;
  StateVector sd;
  sd << wp, wp, params_.gamma_position_std, wp, wv, wv, params_.gamma_velocity_std, wv;
  return sd.array().square().matrix().asDiagonal();
}

MeasurementCovariance KalmanFilter::measurement_noise(const StateVector& mean) const {
  const double h = std::max(mean(3), params_.min_height);
  const double wp = params_.position_weight * h;
  MeasurementVector sd(wp, wp, params_.gamma_measurement_std, wp);
  return sd.array().square().matrix().asDiagonal();
}

GaussianState KalmanFilter::predict(const GaussianState& state) const {
  GaussianState out;
  out.mean = motion_ * state.mean;
  out.covariance = motion_ * state.covariance * motion_.transpose() + process_noise(state.mean);
  out.covariance = (0.5 * (out.covariance + out.covariance.transpose())).eval();
  return out;
}

std::pair<MeasurementVector, MeasurementCovariance> KalmanFilter::project(
    const GaussianState& state) const {
  MeasurementVector m = observation_ * state.mean;
  MeasurementCovariance s =
      observation_ * state.covariance * observation_.transpose() + measurement_noise(state.mean);
  return {m, s};
}

GaussianState KalmanFilter::update(const GaussianState& state, const BBox& box) const {
  auto [projected, innovation_cov] = project(state);
  const Eigen::Matrix<double, 8, 4> cross = state.covariance * observation_.transpose();

  Eigen::LLT<MeasurementCovariance> llt(innovation_cov);
  double ridge = 1e-9 * std::max(1.0, innovation_cov.diagonal().cwiseAbs().maxCoeff());
  while (llt.info() != Eigen::Success) {
    innovation_cov += ridge * MeasurementCovariance::Identity();
    llt.compute(innovation_cov);
    ridge *= 10.0;
  }
  // K = P H^T S^-1, solved as S K^T = H P
  const Eigen::Matrix<double, 8, 4> gain = llt.solve(cross.transpose()).transpose();
  const MeasurementVector innovation = to_measurement(box) - projected;

  GaussianState out;
  out.mean = state.mean + gain * innovation;
  const StateCovariance i_kh = StateCovariance::Identity() - gain * observation_;
  out.covariance = i_kh * state.covariance * i_kh.transpose() +
                   gain * measurement_noise(state.mean) * gain.transpose();
  out.covariance = (0.5 * (out.covariance + out.covariance.transpose())).eval();
  out.mean(2) = std::max(out.mean(2), params_.min_gamma);
  out.mean(3) = std::max(out.mean(3), params_.min_height);
  return out;
}

}  // namespace bccf
