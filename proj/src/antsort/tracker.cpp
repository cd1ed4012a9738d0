#include "antinspect/antsort/tracker.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

#include "antinspect/antsort/assignment.hpp"
#include "antinspect/core/errors.hpp"

namespace antinspect::antsort {

std::string_view to_string(TrackStatus s) {
  switch (s) {
    case TrackStatus::Tentative: return "tentative";
    case TrackStatus::Confirmed: return "confirmed";
    case TrackStatus::Lost: return "lost";
    case TrackStatus::Removed: return "removed";
  }
  return "unknown";
}

bool transition_allowed(TrackStatus from, TrackStatus to) {
  if (from == to) return true;
  switch (from) {
    case TrackStatus::Tentative:
      return to == TrackStatus::Confirmed || to == TrackStatus::Removed;
    case TrackStatus::Confirmed:
      return to == TrackStatus::Lost || to == TrackStatus::Removed;
    case TrackStatus::Lost:
      return to == TrackStatus::Confirmed || to == TrackStatus::Removed;
    case TrackStatus::Removed:
      return false;
  }
  return false;
}

void TrackerConfig::validate() const {
  auto fail = [](std::string_view field, std::string_view rule) {
    throw ConfigError(fmt::format("tracker.{}: {}", field, rule));
  };
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail("epsilon", "must lie in (0, 1)");
  if (!(iou_gate_high >= 0.0 && iou_gate_high <= 1.0)) fail("iou_gate_high", "must lie in [0, 1]");
  if (!(iou_gate_low >= 0.0 && iou_gate_low <= 1.0)) fail("iou_gate_low", "must lie in [0, 1]");
  if (max_lost_frames < 0) fail("max_lost_frames", "must be >= 0");
  if (confirm_hits < 1) fail("confirm_hits", "must be >= 1");
  if (!std::isfinite(imu_scale)) fail("imu_scale", "must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt", "must be > 0");
  if (!(process_noise > 0.0)) fail("process_noise", "must be > 0");
  if (!(measurement_noise > 0.0)) fail("measurement_noise", "must be > 0");
}

KalmanBoxFilter TrackerConfig::make_filter() const {
  NoiseModel noise;
  noise.process_scale = process_noise;
  noise.measurement_scale = measurement_noise;
  return KalmanBoxFilter(dt, noise, imu_scale, imu_z_to_size);
}

Track predict(Track track, const ImuSample& imu, const TrackerConfig& config) {
  const auto filter = config.make_filter();
  if (config.imu_compensation) {
    filter.predict(track.state, imu);
  } else {
    filter.predict(track.state);
  }
  return track;
}

namespace {

void absorb(Track& t, const Detection& det, const KalmanBoxFilter& filter,
            const TrackerConfig& config) {
  filter.update(t.state, det.bbox);
  ++t.hits;
  t.frames_since_update = 0;
  t.class_id = det.class_id;
  t.score = det.score;
  if (t.status == TrackStatus::Lost ||
      (t.status == TrackStatus::Tentative && t.hits >= config.confirm_hits)) {
    t.status = TrackStatus::Confirmed;
  }
}

// Matches `track_rows` against `det_cols` on 1 - IoU with the given gate.
void match_stage(std::span<const Track> tracks, std::span<const Detection> dets,
                 const std::vector<std::size_t>& track_rows, const std::vector<std::size_t>& det_cols,
                 double gate, std::vector<Match>& matches, std::vector<std::size_t>& left_rows,
                 std::vector<std::size_t>& left_cols) {
  CostMatrix m(track_rows.size(), det_cols.size());
  for (std::size_t r = 0; r < track_rows.size(); ++r) {
    const BoundingBox tb = tracks[track_rows[r]].box();
    for (std::size_t c = 0; c < det_cols.size(); ++c) {
      const double overlap = iou(tb, dets[det_cols[c]].bbox);
      m.at(r, c) = 1.0 - overlap;
      m.feasible[r * m.cols + c] = overlap >= gate && overlap > 0.0;
    }
  }
  const auto assigned = solve_assignment(m, 1.0);
  std::vector<bool> col_used(det_cols.size(), false);
  for (std::size_t r = 0; r < track_rows.size(); ++r) {
    if (assigned[r]) {
      matches.push_back({tracks[track_rows[r]].id, det_cols[*assigned[r]]});
      col_used[*assigned[r]] = true;
    } else {
      left_rows.push_back(track_rows[r]);
    }
  }
  for (std::size_t c = 0; c < det_cols.size(); ++c) {
    if (!col_used[c]) left_cols.push_back(det_cols[c]);
  }
}

}  // namespace

Track update(Track track, const Detection& det, const TrackerConfig& config) {
  absorb(track, det, config.make_filter(), config);
  return track;
}

Association associate(std::span<const Track> tracks, std::span<const Detection> dets,
                      const TrackerConfig& config) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (tracks[i].status != TrackStatus::Removed) rows.push_back(i);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [&](std::size_t a, std::size_t b) { return tracks[a].id < tracks[b].id; });

  std::vector<std::size_t> high, low;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    (dets[i].score >= config.epsilon ? high : low).push_back(i);
  }

  Association out;
  std::vector<std::size_t> rows_left, high_left;
  match_stage(tracks, dets, rows, high, config.iou_gate_high, out.matches, rows_left, high_left);

  std::vector<std::size_t> second = low;
  second.insert(second.end(), high_left.begin(), high_left.end());
  std::sort(second.begin(), second.end());
  std::vector<std::size_t> rows_final, dets_final;
  match_stage(tracks, dets, rows_left, second, config.iou_gate_low, out.matches, rows_final,
              dets_final);

  std::sort(out.matches.begin(), out.matches.end(),
            [](const Match& a, const Match& b) { return a.track_id < b.track_id; });
  for (std::size_t r : rows_final) out.unmatched_tracks.push_back(tracks[r].id);
  std::sort(out.unmatched_tracks.begin(), out.unmatched_tracks.end());
  out.unmatched_dets = std::move(dets_final);
  return out;
}

Tracker::Tracker(TrackerConfig config) : config_(config), filter_(config.make_filter()) {
  config_.validate();
}

StepResult Tracker::step(const FrameRecord& frame, const ImuSample& imu) {
  if (started_ && frame.frame_index <= last_frame_) {
    throw OutOfOrderFrame(
        fmt::format("frame {} arrived after frame {}", frame.frame_index, last_frame_));
  }
  if (imu.frame_index != frame.frame_index) {
    throw MissingImu(fmt::format("no IMU sample for frame {} (got frame {})", frame.frame_index,
                                 imu.frame_index));
  }
  started_ = true;
  last_frame_ = frame.frame_index;

  for (auto& t : tracks_) {
    if (config_.imu_compensation) {
      filter_.predict(t.state, imu);
    } else {
      filter_.predict(t.state);
    }
    ++t.age;
  }

  const Association assoc = associate(tracks_, frame.detections, config_);

  StepResult result;
  std::size_t mi = 0;
  for (auto& t : tracks_) {
    if (mi < assoc.matches.size() && assoc.matches[mi].track_id == t.id) {
      const Detection& det = frame.detections[assoc.matches[mi].det_index];
      absorb(t, det, filter_, config_);
      result.newly_matched.push_back({t.id, det, t.box()});
      ++mi;
    } else {
      ++t.frames_since_update;
      if (t.status == TrackStatus::Tentative) {
        t.status = TrackStatus::Removed;
      } else if (t.status == TrackStatus::Confirmed) {
        t.status = TrackStatus::Lost;
      }
      if (t.status == TrackStatus::Lost && t.frames_since_update > config_.max_lost_frames) {
        t.status = TrackStatus::Removed;
      }
    }
  }

  std::erase_if(tracks_, [](const Track& t) { return t.status == TrackStatus::Removed; });

  for (std::size_t di : assoc.unmatched_dets) {
    const Detection& det = frame.detections[di];
    if (det.score < config_.epsilon) continue;
    Track t;
    t.id = next_id_++;
    t.state = filter_.initiate(det.bbox);
    t.status = config_.confirm_hits <= 1 ? TrackStatus::Confirmed : TrackStatus::Tentative;
    t.hits = 1;
    t.class_id = det.class_id;
    t.score = det.score;
    result.newly_matched.push_back({t.id, det, t.box()});
    tracks_.push_back(std::move(t));
  }

  result.active_tracks = tracks_;
  return result;
}

}  // namespace antinspect::antsort
