#pragma once

#include <cstdint>
#include <vector>

#include "antinspect/core/io.hpp"
#include "antinspect/core/types.hpp"

namespace antinspect::app {

// Seeded synthetic inspection flight. Targets are fixed on the ground; the
// camera pans across them with piecewise-constant acceleration, and the IMU
// reports that acceleration (divided by imu_scale) for each frame interval.
struct SynthConfig {
  std::uint64_t seed = 1;
  double duration = 40.0;  // s
  double fps = 30.0;
  int n_targets = 22;
  double image_width = 1920.0;
  double image_height = 1080.0;
  double pan_speed = 80.0;      // mean scene speed across the image, px/s
  double accel_max = 40.0;      // px/s^2
  double accel_hold = 1.0;      // s between acceleration changes
  double imu_scale = 50.0;      // px per meter, must match the tracker
  double imu_noise = 0.0;       // m/s^2 std-dev
  double position_noise = 1.0;  // px std-dev on detected centers
  double size_noise = 0.5;      // px std-dev on detected sizes
  double miss_prob = 0.0;       // chance a visible target goes undetected
  double score_min = 0.55;
  double score_max = 0.95;
  double clutter_rate = 0.5;    // small false detections spawned per frame
  int clutter_max_frames = 4;
  double oversize_rate = 0.02;  // oversized false detections spawned per frame
  int oversize_max_frames = 40;

  void validate() const;
};

struct SyntheticMission {
  std::vector<FrameRecord> frames;
  std::vector<ImuSample> imu;
  std::vector<io::TruthFrame> truth;
};

SyntheticMission generate_mission(const SynthConfig& config);

}  // namespace antinspect::app
