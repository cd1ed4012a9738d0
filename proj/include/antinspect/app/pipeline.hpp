#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "antinspect/antsort/tracker.hpp"
#include "antinspect/app/config.hpp"
#include "antinspect/commsim/commsim.hpp"
#include "antinspect/core/io.hpp"
#include "antinspect/ksa/ksa.hpp"

namespace antinspect::app {

struct MissionData {
  std::vector<FrameRecord> frames;
  std::vector<ImuSample> imu;
  std::vector<io::TruthFrame> truth;
};

MissionData load_mission_data(const MissionConfig& config);

/// One row of the track dump: a track alive after a frame was processed.
struct TrackRow {
  std::int64_t frame_index = 0;
  std::int64_t track_id = 0;
  antsort::TrackStatus status = antsort::TrackStatus::Tentative;
  BoundingBox box;
  double score = 0.0;
  ClassId class_id = 0;
  bool matched = false;  // associated with a detection on this frame
};

struct EdgeRun {
  std::vector<double> frame_timestamps;
  std::vector<ksa::TrackSighting> sightings;  // every matched or new track, per frame
  std::vector<ksa::Keyframe> keyframes;       // what the judge selected
  std::vector<TrackRow> rows;
};

/// Tracker followed by the keyframe judge over a whole mission. With
/// `filter_pixels` the detections pass the tau filter before tracking.
EdgeRun run_edge(const MissionData& data, const antsort::TrackerConfig& tracker,
                 const ksa::KsaConfig& ksa, bool filter_pixels, MissingImuPolicy missing_imu);

/// Truth target whose box overlaps `box` most on `frame_index`, if that IoU
/// reaches `min_iou`.
std::optional<std::int64_t> match_target(const BoundingBox& box, std::int64_t frame_index,
                                         const std::vector<io::TruthFrame>& truth, double min_iou);

/// A record is an interference source when it overlaps a truth target.
std::vector<commsim::GroundTruthLabel> label_records(const std::vector<ksa::Keyframe>& records,
                                                     const std::vector<io::TruthFrame>& truth,
                                                     double min_iou);

struct ModeOutcome {
  commsim::ModeParams params;
  commsim::UploadStream stream;
  commsim::LatencyReport report;
  const EdgeRun* edge = nullptr;  // run the stream came from
};

// Runs the edge pipeline at most twice per mission (with and without the
// keyframe stages) and derives each mode's upload stream from those runs.
// CO and ECC deliver every sighting; ECC+ delivers keyframes only.
class MissionRunner {
 public:
  MissionRunner(const MissionConfig& config, MissionData data);

  ModeOutcome run(const commsim::ModeParams& params);
  [[nodiscard]] double duration() const;
  [[nodiscard]] const MissionData& data() const { return data_; }

 private:
  const EdgeRun& full_run();
  const EdgeRun& keyframe_run();

  const MissionConfig& config_;
  MissionData data_;
  std::optional<EdgeRun> full_;
  std::optional<EdgeRun> keyframes_;
};

}  // namespace antinspect::app
