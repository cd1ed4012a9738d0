#include "antinspect/antsort/kalman.hpp"

#include <algorithm>

namespace antinspect::antsort {
namespace {
constexpr double kMinSize = 1e-3;
}

BoundingBox TrackState::box() const {
  return {mean(0), mean(1), std::max(mean(2), kMinSize), std::max(mean(3), kMinSize)};
}

KalmanBoxFilter::KalmanBoxFilter(double dt, NoiseModel noise, double imu_scale, bool imu_z_to_size)
    : dt_(dt), noise_(noise) {
  transition_ = StateMatrix::Identity();
  for (int i = 0; i < 4; ++i) transition_(i, i + 4) = dt;

  const double pos_gain = 0.5 * imu_scale * dt * dt;
  const double vel_gain = imu_scale * dt;
  control_.setZero();
  control_(0, 0) = pos_gain;
  control_(4, 0) = vel_gain;
  control_(1, 1) = pos_gain;
  control_(5, 1) = vel_gain;
  if (imu_z_to_size) {
    control_(2, 2) = pos_gain;
    control_(6, 2) = vel_gain;
    control_(3, 2) = pos_gain;
    control_(7, 2) = vel_gain;
  }
}

Eigen::Matrix<double, 4, 8> KalmanBoxFilter::observation() {
  Eigen::Matrix<double, 4, 8> H = Eigen::Matrix<double, 4, 8>::Zero();
  for (int i = 0; i < 4; ++i) H(i, i) = 1.0;
  return H;
}

TrackState KalmanBoxFilter::initiate(const BoundingBox& box) const {
  TrackState s;
  s.mean << box.cx, box.cy, box.w, box.h, 0.0, 0.0, 0.0, 0.0;
  const double p = 2.0 * noise_.position_weight * box.h;
  const double v = 10.0 * noise_.velocity_weight * box.h / dt_;
  StateVector std_dev;
  std_dev << p, p, p, p, v, v, v, v;
  s.covariance = std_dev.array().square().matrix().asDiagonal();
  return s;
}

StateMatrix KalmanBoxFilter::process_noise(const StateVector& mean) const {
  const double h = std::max(mean(3), kMinSize);
  const double p = noise_.position_weight * h;
  const double v = noise_.velocity_weight * h / dt_;
  StateVector var;
  var << p * p, p * p, p * p, p * p, v * v, v * v, v * v, v * v;
  return (noise_.process_scale * var).asDiagonal();
}

MeasurementMatrix KalmanBoxFilter::measurement_noise(const StateVector& mean) const {
  const double h = std::max(mean(3), kMinSize);
  const double p = noise_.position_weight * h;
  return (noise_.measurement_scale * p * p) * MeasurementMatrix::Identity();
}

void KalmanBoxFilter::propagate_covariance(TrackState& state) const {
  const StateMatrix Q = process_noise(state.mean);
  state.covariance = transition_ * state.covariance * transition_.transpose() + Q;
  state.covariance = 0.5 * (state.covariance + state.covariance.transpose()).eval();
}

void KalmanBoxFilter::predict(TrackState& state) const {
  propagate_covariance(state);
  state.mean = transition_ * state.mean;
}

void KalmanBoxFilter::predict(TrackState& state, const ImuSample& imu) const {
  propagate_covariance(state);
  const ControlVector u(imu.ax, imu.ay, imu.az);
  state.mean = transition_ * state.mean + control_ * u;
}

void KalmanBoxFilter::update(TrackState& state, const BoundingBox& measurement) const {
  const MeasurementVector z(measurement.cx, measurement.cy, measurement.w, measurement.h);
  const MeasurementMatrix R = measurement_noise(state.mean);
  joseph_update<8, 4>(state.mean, state.covariance, z, observation(), R);
  keep_size_positive(state);
}

void KalmanBoxFilter::keep_size_positive(TrackState& state) {
  state.mean(2) = std::max(state.mean(2), kMinSize);
  state.mean(3) = std::max(state.mean(3), kMinSize);
}

}  // namespace antinspect::antsort
