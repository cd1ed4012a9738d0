#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "antinspect/core/types.hpp"

namespace antinspect::io {

// Line-delimited JSON formats. One object per line; blank lines are skipped.
//
// detections:  {"frame_index": 0, "timestamp": 0.0,
//               "detections": [{"cx":..,"cy":..,"w":..,"h":..,"score":..,"class_id":0}]}
// imu:         {"frame_index": 0, "ax": 0.0, "ay": 0.0, "az": 0.0}
// truth:       {"frame_index": 0, "targets": [{"target_id":3,"cx":..,"cy":..,"w":..,"h":..,
//               "class_id":0}]}

struct TruthTarget {
  std::int64_t target_id = 0;
  BoundingBox bbox;
  ClassId class_id = 0;
};

struct TruthFrame {
  std::int64_t frame_index = 0;
  std::vector<TruthTarget> targets;
};

std::vector<FrameRecord> parse_detections(std::string_view text);
std::vector<ImuSample> parse_imu(std::string_view text);
std::vector<TruthFrame> parse_truth(std::string_view text);

std::string format_detections(const std::vector<FrameRecord>& frames);
std::string format_imu(const std::vector<ImuSample>& samples);
std::string format_truth(const std::vector<TruthFrame>& frames);

std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Buffers several outputs and commits them together, so a run that throws
/// before commit() leaves nothing behind.
class OutputSet {
 public:
  void add(std::filesystem::path path, std::string content);
  void commit() const;
  [[nodiscard]] const std::map<std::filesystem::path, std::string>& files() const {
    return files_;
  }

 private:
  std::map<std::filesystem::path, std::string> files_;
};

}  // namespace antinspect::io
