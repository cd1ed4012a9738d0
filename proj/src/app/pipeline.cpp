#include "antinspect/app/pipeline.hpp"

#include <fmt/core.h>

#include <map>

#include "antinspect/core/errors.hpp"

namespace antinspect::app {

MissionData load_mission_data(const MissionConfig& config) {
  MissionData d;
  d.frames = io::parse_detections(io::read_file(config.detections));
  if (!config.imu.empty()) d.imu = io::parse_imu(io::read_file(config.imu));
  d.truth = io::parse_truth(io::read_file(config.truth));
  return d;
}

EdgeRun run_edge(const MissionData& data, const antsort::TrackerConfig& tracker_config,
                 const ksa::KsaConfig& ksa_config, bool filter_pixels,
                 MissingImuPolicy missing_imu) {
  std::map<std::int64_t, const ImuSample*> imu_by_frame;
  for (const auto& s : data.imu) imu_by_frame[s.frame_index] = &s;

  antsort::Tracker tracker(tracker_config);
  ksa::KsaState state;
  EdgeRun run;
  for (const auto& frame : data.frames) {
    ImuSample imu{frame.frame_index, 0.0, 0.0, 0.0};
    if (auto it = imu_by_frame.find(frame.frame_index); it != imu_by_frame.end()) {
      imu = *it->second;
    } else if (missing_imu == MissingImuPolicy::Error) {
      throw MissingImu(fmt::format("no IMU sample for frame {}", frame.frame_index));
    }

    FrameRecord input = frame;
    if (filter_pixels) input.detections = ksa::pixel_filter(frame.detections, ksa_config.tau);
    const antsort::StepResult step = tracker.step(input, imu);

    std::vector<ksa::TrackSighting> sightings;
    sightings.reserve(step.newly_matched.size());
    for (const auto& s : step.newly_matched) {
      sightings.push_back(
          {s.track_id, frame.frame_index, s.detection.bbox, s.detection.class_id, frame.timestamp});
    }
    const auto keyframes = ksa::judge(state, sightings, ksa_config);

    std::size_t si = 0;
    for (const auto& t : step.active_tracks) {
      while (si < step.newly_matched.size() && step.newly_matched[si].track_id < t.id) ++si;
      const bool matched = si < step.newly_matched.size() && step.newly_matched[si].track_id == t.id;
      run.rows.push_back({frame.frame_index, t.id, t.status, t.box(), t.score, t.class_id, matched});
    }
    run.frame_timestamps.push_back(frame.timestamp);
    run.sightings.insert(run.sightings.end(), sightings.begin(), sightings.end());
    run.keyframes.insert(run.keyframes.end(), keyframes.begin(), keyframes.end());
  }
  return run;
}

std::optional<std::int64_t> match_target(const BoundingBox& box, std::int64_t frame_index,
                                         const std::vector<io::TruthFrame>& truth, double min_iou) {
  const auto it = std::lower_bound(
      truth.begin(), truth.end(), frame_index,
      [](const io::TruthFrame& f, std::int64_t k) { return f.frame_index < k; });
  if (it == truth.end() || it->frame_index != frame_index) return std::nullopt;
  std::optional<std::int64_t> best;
  double best_iou = min_iou;
  for (const auto& t : it->targets) {
    const double v = iou(box, t.bbox);
    if (v >= best_iou) {
      if (!best || v > best_iou) best = t.target_id;
      best_iou = v;
    }
  }
  return best;
}

std::vector<commsim::GroundTruthLabel> label_records(const std::vector<ksa::Keyframe>& records,
                                                     const std::vector<io::TruthFrame>& truth,
                                                     double min_iou) {
  std::vector<commsim::GroundTruthLabel> labels;
  labels.reserve(records.size());
  for (const auto& r : records) {
    labels.push_back({r.frame_index, r.track_id,
                      match_target(r.bbox, r.frame_index, truth, min_iou).has_value()});
  }
  return labels;
}

MissionRunner::MissionRunner(const MissionConfig& config, MissionData data)
    : config_(config), data_(std::move(data)) {}

const EdgeRun& MissionRunner::full_run() {
  if (!full_) {
    full_ = run_edge(data_, config_.tracker, ksa::KsaConfig::disabled(), false, config_.missing_imu);
  }
  return *full_;
}

const EdgeRun& MissionRunner::keyframe_run() {
  if (!keyframes_) {
    keyframes_ = run_edge(data_, config_.tracker, config_.ksa, true, config_.missing_imu);
  }
  return *keyframes_;
}

double MissionRunner::duration() const {
  if (config_.duration) return *config_.duration;
  return static_cast<double>(data_.frames.size()) * config_.tracker.dt;
}

ModeOutcome MissionRunner::run(const commsim::ModeParams& params) {
  ModeOutcome out;
  out.params = params;
  const bool keyframes_only = params.mode == commsim::Mode::ECCPlus;
  const EdgeRun& edge = keyframes_only ? keyframe_run() : full_run();
  out.edge = &edge;
  out.stream.frame_timestamps = edge.frame_timestamps;
  if (keyframes_only) {
    out.stream.records = edge.keyframes;
  } else {
    out.stream.records.reserve(edge.sightings.size());
    for (const auto& s : edge.sightings) {
      out.stream.records.push_back({s.frame_index, s.track_id, s.bbox, s.class_id, s.timestamp});
    }
  }
  const auto labels = label_records(out.stream.records, data_.truth, config_.label_iou);
  out.report = commsim::run_mission(params, out.stream, labels, duration());
  return out;
}

}  // namespace antinspect::app
