#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "antinspect/antsort/kalman.hpp"
#include "antinspect/core/types.hpp"

namespace antinspect::antsort {

enum class TrackStatus { Tentative, Confirmed, Lost, Removed };

std::string_view to_string(TrackStatus s);
/// Whether the lifecycle permits moving from `from` to `to`.
bool transition_allowed(TrackStatus from, TrackStatus to);

struct Track {
  std::int64_t id = 0;
  TrackState state;
  TrackStatus status = TrackStatus::Tentative;
  int hits = 0;
  int age = 0;
  int frames_since_update = 0;
  ClassId class_id = 0;
  double score = 0.0;  // score of the most recent associated detection

  [[nodiscard]] BoundingBox box() const { return state.box(); }
};

struct TrackerConfig {
  double epsilon = 0.5;  // splits detections into high / low confidence
  double iou_gate_high = 0.3;
  double iou_gate_low = 0.2;
  int max_lost_frames = 30;
  int confirm_hits = 3;
  double imu_scale = 50.0;  // pixels per meter
  double dt = 1.0 / 30.0;
  double process_noise = 1.0;
  double measurement_noise = 1.0;
  // Off gives the plain constant-velocity baseline (no motion compensation).
  bool imu_compensation = true;
  // Maps the z acceleration onto the box size rates. Off by default.
  bool imu_z_to_size = false;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  [[nodiscard]] KalmanBoxFilter make_filter() const;
};

Track predict(Track track, const ImuSample& imu, const TrackerConfig& config);
Track update(Track track, const Detection& det, const TrackerConfig& config);

struct Match {
  std::int64_t track_id = 0;
  std::size_t det_index = 0;
  friend bool operator==(const Match&, const Match&) = default;
};

struct Association {
  std::vector<Match> matches;  // sorted by track id
  std::vector<std::int64_t> unmatched_tracks;
  std::vector<std::size_t> unmatched_dets;  // all stages, ascending index
};

/// Two-stage IoU association: high-score detections first, then the leftover
/// tracks against low-score plus still-unmatched high-score detections.
/// `tracks` must already be predicted to the current frame.
Association associate(std::span<const Track> tracks, std::span<const Detection> dets,
                      const TrackerConfig& config);

/// A track that was associated with (or started from) a detection this frame.
struct Sighting {
  std::int64_t track_id = 0;
  Detection detection;
  BoundingBox track_box;  // posterior box after the update
};

struct StepResult {
  std::vector<Track> active_tracks;
  std::vector<Sighting> newly_matched;  // sorted by track id
};

class Tracker {
 public:
  explicit Tracker(TrackerConfig config);

  /// Frames must arrive with strictly increasing frame_index and an IMU sample
  /// for the same frame.
  StepResult step(const FrameRecord& frame, const ImuSample& imu);

  [[nodiscard]] const std::vector<Track>& tracks() const { return tracks_; }
  [[nodiscard]] const TrackerConfig& config() const { return config_; }
  [[nodiscard]] std::int64_t last_frame() const { return last_frame_; }

 private:
  TrackerConfig config_;
  KalmanBoxFilter filter_;
  std::vector<Track> tracks_;  // creation order == id order
  std::int64_t next_id_ = 1;
  std::int64_t last_frame_ = -1;
  bool started_ = false;
};

}  // namespace antinspect::antsort
