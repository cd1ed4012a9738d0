#pragma once

#include <Eigen/Dense>

#include "antinspect/core/types.hpp"

namespace antinspect::antsort {

using StateVector = Eigen::Matrix<double, 8, 1>;
using StateMatrix = Eigen::Matrix<double, 8, 8>;
using MeasurementVector = Eigen::Matrix<double, 4, 1>;
using MeasurementMatrix = Eigen::Matrix<double, 4, 4>;
using ControlVector = Eigen::Matrix<double, 3, 1>;

/// Mean [cx, cy, w, h, vcx, vcy, vw, vh] (pixels, pixels/s) and covariance.
struct TrackState {
  StateVector mean = StateVector::Zero();
  StateMatrix covariance = StateMatrix::Identity();

  [[nodiscard]] BoundingBox box() const;
};

/// Noise std-devs are proportional to the box height, as in the SORT family.
// Standard deviations as fractions of box height. Velocity weights are per
// frame; the filter divides them by dt for its pixels-per-second state.
struct NoiseModel {
  double position_weight = 1.0 / 20.0;
  double velocity_weight = 1.0 / 160.0;
  double process_scale = 1.0;
  double measurement_scale = 1.0;
};

// Joseph-form measurement update for any linear-Gaussian model. Keeps the
// posterior covariance symmetric and PSD under rounding.
template <int N, int M>
void joseph_update(Eigen::Matrix<double, N, 1>& mean, Eigen::Matrix<double, N, N>& cov,
                   const Eigen::Matrix<double, M, 1>& z, const Eigen::Matrix<double, M, N>& H,
                   const Eigen::Matrix<double, M, M>& R) {
  const Eigen::Matrix<double, M, M> S = H * cov * H.transpose() + R;
  const Eigen::Matrix<double, M, N> HP = H * cov;
  const Eigen::Matrix<double, N, M> K = S.ldlt().solve(HP).transpose();
  mean = mean + K * (z - H * mean);
  const Eigen::Matrix<double, N, N> IKH = Eigen::Matrix<double, N, N>::Identity() - K * H;
  cov = IKH * cov * IKH.transpose() + K * R * K.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
}

/// Constant-velocity box filter with an optional IMU control input. The
/// control term integrates the reported acceleration over one frame interval:
/// position += 1/2 * s * a * dt^2, velocity += s * a * dt, with s the
/// pixels-per-meter projection gain.
class KalmanBoxFilter {
 public:
  KalmanBoxFilter(double dt, NoiseModel noise, double imu_scale, bool imu_z_to_size);

  [[nodiscard]] TrackState initiate(const BoundingBox& box) const;

  /// Plain constant-velocity prediction.
  void predict(TrackState& state) const;
  /// Prediction with the IMU acceleration as control input.
  void predict(TrackState& state, const ImuSample& imu) const;

  void update(TrackState& state, const BoundingBox& measurement) const;

  [[nodiscard]] const StateMatrix& transition() const { return transition_; }
  [[nodiscard]] const Eigen::Matrix<double, 8, 3>& control() const { return control_; }
  [[nodiscard]] StateMatrix process_noise(const StateVector& mean) const;
  [[nodiscard]] MeasurementMatrix measurement_noise(const StateVector& mean) const;

  static Eigen::Matrix<double, 4, 8> observation();

 private:
  void propagate_covariance(TrackState& state) const;
  static void keep_size_positive(TrackState& state);

  double dt_;
  NoiseModel noise_;
  StateMatrix transition_;
  Eigen::Matrix<double, 8, 3> control_;
};

}  // namespace antinspect::antsort
