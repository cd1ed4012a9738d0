#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "antinspect/core/types.hpp"

namespace antinspect::ksa {

struct KsaConfig {
  double tau = 120.0;  // pixel threshold on both box sides
  int mu = 6;          // required tracked frames
  // false: the judge table never resets, a gap in sightings permanently
  // widens the window. true: a gap restarts the count.
  bool strict_consecutive = false;

  void validate() const;

  /// Pass-through configuration: every box kept, every first sighting uploaded.
  static KsaConfig disabled() {
    return {std::numeric_limits<double>::infinity(), 1, false};
  }
};

struct KsaEntry {
  int count = 0;
  std::int64_t first_frame = 0;
  std::int64_t last_frame = 0;
};

struct Keyframe {
  std::int64_t frame_index = 0;
  std::int64_t track_id = 0;
  BoundingBox bbox;
  ClassId class_id = 0;
  double upload_timestamp = 0.0;
};

/// One tracked (matched or newly started) track on one frame.
struct TrackSighting {
  std::int64_t track_id = 0;
  std::int64_t frame_index = 0;
  BoundingBox bbox;
  ClassId class_id = 0;
  double timestamp = 0.0;
};

struct KsaState {
  std::map<std::int64_t, KsaEntry> judge_table;
  std::set<std::int64_t> uploaded_ids;
  std::int64_t last_frame = std::numeric_limits<std::int64_t>::min();
};

/// Keeps detections with w <= tau and h <= tau, in input order.
std::vector<Detection> pixel_filter(std::span<const Detection> dets, double tau);

/// Second filtration stage. Ids already uploaded are skipped; a keyframe is
/// emitted the first time an id has at least mu sightings spread over at most
/// mu frames. Sightings must come in non-decreasing frame order.
std::vector<Keyframe> judge(KsaState& state, std::span<const TrackSighting> matched,
                            const KsaConfig& config);

}  // namespace antinspect::ksa
